//! Normal logic programs, their Clark completion, the translation into a
//! closed-world theory with one auxiliary predicate per rule, and a
//! brute-force supported-model checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::ground::{compare, eval_term, GroundError};
use crate::lang::{
    Atom, AtomKind, Bindings, Comparison, Cursor, DataSet, ExprParser, ExtendedClause, GroundAtom, Item,
    LangError, Program, Statement, Term, Tok, Value,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error(transparent)]
    Parse(#[from] LangError),
    #[error("rule head `{head}` is not in normal form: {reason}")]
    NormalForm { head: String, reason: &'static str },
    #[error("predicate `{predicate}` used with arity {first} and {second}")]
    Arity {
        predicate: String,
        first: usize,
        second: usize,
    },
    #[error("input fact `{fact}` is over a predicate defined by the program")]
    FactOverDefined { fact: String },
    #[error("the Herbrand base has {atoms} atoms of defined predicates, above the limit of {limit}")]
    TooLarge { atoms: usize, limit: usize },
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// `head :- pos, not neg.` with the head arguments distinct variables.
/// Comparisons appear only in `pos`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalRule {
    pub head: Atom,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

impl NormalRule {
    fn head_vars(&self) -> Vec<&str> {
        self.head
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) => v.as_str(),
                _ => unreachable!("checked by NormalProgram::new"),
            })
            .collect()
    }

    /// Body variables that do not occur in the head, in order of first
    /// occurrence.
    pub fn local_vars(&self) -> Vec<&str> {
        let head = self.head_vars();
        let mut out: Vec<&str> = Vec::new();
        for a in self.pos.iter().chain(&self.neg) {
            for t in &a.args {
                t.for_each_var(&mut |v| {
                    if !head.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                });
            }
        }
        out
    }
}

impl fmt::Display for NormalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        let body: Vec<String> = self
            .pos
            .iter()
            .map(|a| a.to_string())
            .chain(self.neg.iter().map(|a| format!("not {a}")))
            .collect();
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        }
        f.write_str(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalProgram {
    pub rules: Vec<NormalRule>,
    /// Every non-comparison predicate with its arity.
    pub predicates: BTreeMap<String, usize>,
}

impl NormalProgram {
    pub fn new(rules: Vec<NormalRule>) -> Result<Self, CompletionError> {
        Self::with_predicates(rules, [])
    }

    /// Like [`NormalProgram::new`], additionally declaring predicates that
    /// may not occur in any rule.
    pub fn with_predicates(
        rules: Vec<NormalRule>,
        extra: impl IntoIterator<Item = (String, usize)>,
    ) -> Result<Self, CompletionError> {
        let mut predicates: BTreeMap<String, usize> = BTreeMap::new();
        let mut note = |name: &str, arity: usize| match predicates.get(name) {
            Some(&a) if a != arity => Err(CompletionError::Arity {
                predicate: name.to_string(),
                first: a,
                second: arity,
            }),
            _ => {
                predicates.insert(name.to_string(), arity);
                Ok(())
            }
        };
        for (p, a) in extra {
            note(&p, a)?;
        }
        let mut heads: BTreeMap<&str, &[Term]> = BTreeMap::new();
        for r in &rules {
            let bad = |reason| CompletionError::NormalForm {
                head: r.head.to_string(),
                reason,
            };
            if r.head.kind == AtomKind::Predefined {
                return Err(bad("comparisons cannot be heads"));
            }
            let mut seen = BTreeSet::new();
            for t in &r.head.args {
                match t {
                    Term::Var(v) if seen.insert(v) => {}
                    Term::Var(_) => return Err(bad("repeated head variable")),
                    _ => return Err(bad("head arguments must be variables")),
                }
            }
            match heads.get(r.head.predicate.as_str()) {
                Some(args) if *args != r.head.args.as_slice() => {
                    return Err(bad("rules for one predicate must share the head variables"))
                }
                _ => {
                    heads.insert(&r.head.predicate, &r.head.args);
                }
            }
            note(&r.head.predicate, r.head.arity())?;
            for a in r.pos.iter().chain(&r.neg) {
                if a.kind != AtomKind::Predefined {
                    note(&a.predicate, a.arity())?;
                }
            }
        }
        Ok(NormalProgram { rules, predicates })
    }

    /// Predicates with at least one rule.
    pub fn defined(&self) -> BTreeSet<&str> {
        self.rules.iter().map(|r| r.head.predicate.as_str()).collect()
    }

    /// Predicates with no rule: the input predicates.
    pub fn input_predicates(&self) -> BTreeSet<&str> {
        let defined = self.defined();
        self.predicates
            .keys()
            .map(String::as_str)
            .filter(|p| !defined.contains(p))
            .collect()
    }

    fn rules_for<'a>(&'a self, p: &'a str) -> impl Iterator<Item = &'a NormalRule> + 'a {
        self.rules.iter().filter(move |r| r.head.predicate == p)
    }

    /// Constants written in the rules.
    pub fn constants(&self) -> BTreeSet<Value> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            for a in r.pos.iter().chain(&r.neg) {
                for t in &a.args {
                    t.for_each_constant(&mut |v| {
                        out.insert(v);
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for NormalProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Parses rules `head :- b1, ..., not c1, ... .`. A negated comparison is
/// stored as the complementary comparison.
pub fn parse_normal_program(text: &str) -> Result<NormalProgram, CompletionError> {
    let bindings = Bindings::new();
    let exprs = ExprParser { bindings: &bindings };
    let mut cur = Cursor::new(text)?;
    let mut rules = Vec::new();
    while *cur.peek() != Tok::Eof {
        let e = exprs.expr(&mut cur)?;
        let head = exprs.into_atom(e, &cur)?;
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        if cur.eat(&Tok::If) && *cur.peek() != Tok::Dot {
            loop {
                let negated = matches!(cur.peek(), Tok::Ident(s) if s == "not")
                    && !matches!(cur.peek_at(1), Tok::LParen | Tok::Dot | Tok::Comma);
                if negated {
                    cur.bump();
                }
                let e = exprs.expr(&mut cur)?;
                if let Tok::Cmp(sym) = *cur.peek() {
                    cur.bump();
                    let rhs = exprs.expr(&mut cur)?;
                    let (l, r) = (exprs.into_term(e, &cur)?, exprs.into_term(rhs, &cur)?);
                    let op = Comparison::from_symbol(sym).unwrap();
                    // ordering comparisons are false on type errors, so
                    // only = and != have a comparison as their negation
                    let op = match (negated, op) {
                        (false, op) => op,
                        (true, Comparison::Eq | Comparison::Ne) => op.negate(),
                        (true, _) => {
                            return Err(CompletionError::NormalForm {
                                head: head.to_string(),
                                reason: "negated ordering comparisons are not supported",
                            })
                        }
                    };
                    pos.push(Atom::compare(op, l, r));
                } else {
                    let a = exprs.into_atom(e, &cur)?;
                    if negated {
                        neg.push(a);
                    } else {
                        pos.push(a);
                    }
                }
                if !cur.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        cur.expect(&Tok::Dot)?;
        rules.push(NormalRule { head, pos, neg });
    }
    NormalProgram::new(rules)
}

/// One disjunct `exists Y: body` of a completed definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disjunct {
    pub exists: Vec<String>,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

/// `p(X) <=> d1 | ... | ds`; no disjuncts means `p(X) <=> F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub head: Atom,
    pub disjuncts: Vec<Disjunct>,
}

impl fmt::Display for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <=> ", self.head)?;
        if self.disjuncts.is_empty() {
            return f.write_str("F");
        }
        for (i, d) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let lits: Vec<String> = d
                .pos
                .iter()
                .map(|a| a.to_string())
                .chain(d.neg.iter().map(|a| format!("not {a}")))
                .collect();
            let body = if lits.is_empty() { "T".to_string() } else { lits.join(", ") };
            let several = self.disjuncts.len() > 1 && lits.len() > 1;
            if !d.exists.is_empty() {
                write!(f, "exists {}: ({body})", d.exists.join(", "))?;
            } else if several {
                write!(f, "({body})")?;
            } else {
                f.write_str(&body)?;
            }
        }
        Ok(())
    }
}

fn canonical_head(p: &str, arity: usize) -> Atom {
    Atom::new(p, (1..=arity).map(|i| Term::Var(format!("X{i}"))).collect())
}

/// Clark's completion: one equivalence per predicate of the program.
pub fn clark_completion(p: &NormalProgram) -> Vec<Completion> {
    p.predicates
        .iter()
        .map(|(name, &arity)| {
            let rules: Vec<&NormalRule> = p.rules_for(name).collect();
            let head = rules
                .first()
                .map_or_else(|| canonical_head(name, arity), |r| r.head.clone());
            Completion {
                head,
                disjuncts: rules
                    .iter()
                    .map(|r| Disjunct {
                        exists: r.local_vars().into_iter().map(String::from).collect(),
                        pos: r.pos.clone(),
                        neg: r.neg.clone(),
                    })
                    .collect(),
            }
        })
        .collect()
}

/// Fresh name for the auxiliary predicate of rule `i` of `p`.
fn aux_name(p: &str, i: usize, taken: &BTreeSet<String>) -> String {
    let mut name = format!("d_{p}_{i}");
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// The clausal closed-world program for `p`. Input predicates are declared
/// as data; each rule `r` of a defined predicate gets an auxiliary
/// predicate `d_r(X, Y)` over its head and local variables, with
///
/// ```text
/// d_r(X,Y) -> L.                 for each positive body literal L
/// d_r(X,Y), c -> F.              for each negative body literal not c
/// pos -> d_r(X,Y) ; neg.         the converse
/// d_r(X,Y) -> p(X).
/// p(X) -> d_r1(X,_) ; ... ; d_rs(X,_).
/// ```
pub fn translate(p: &NormalProgram) -> Program {
    let mut prog = Program::default();
    for q in p.input_predicates() {
        prog.statements.push(Statement::DataDecl {
            predicate: q.to_string(),
            arity: p.predicates[q],
        });
    }
    let mut taken: BTreeSet<String> = p.predicates.keys().cloned().collect();
    let clause = |ante: Vec<Atom>, cons: Vec<Atom>| {
        Statement::Clause(ExtendedClause::new(
            ante.into_iter().map(Item::Atom).collect(),
            cons.into_iter().map(Item::Atom).collect(),
        ))
    };

    for name in p.defined() {
        let mut existentials = Vec::new();
        for (i, r) in p.rules_for(name).enumerate() {
            let aux = aux_name(name, i + 1, &taken);
            taken.insert(aux.clone());
            let head_vars = r.head_vars();
            let local = r.local_vars();
            let d = Atom::new(
                aux.clone(),
                head_vars
                    .iter()
                    .chain(&local)
                    .map(|v| Term::Var(v.to_string()))
                    .collect(),
            );
            for l in &r.pos {
                prog.statements.push(clause(vec![d.clone()], vec![l.clone()]));
            }
            for c in &r.neg {
                prog.statements.push(clause(vec![d.clone(), c.clone()], vec![]));
            }
            let mut cons = vec![d.clone()];
            cons.extend(r.neg.iter().cloned());
            prog.statements.push(clause(r.pos.clone(), cons));
            prog.statements.push(clause(vec![d], vec![r.head.clone()]));
            existentials.push(Atom::new(
                aux,
                head_vars
                    .iter()
                    .map(|v| Term::Var(v.to_string()))
                    .chain(local.iter().map(|_| Term::Underscore))
                    .collect(),
            ));
        }
        let head = p.rules_for(name).next().unwrap().head.clone();
        prog.statements.push(clause(vec![head], existentials));
    }
    prog
}

/// Limit on ground atoms of defined predicates for [`supported_models`].
pub const SUPPORTED_GUARD: usize = 20;

type Interp = BTreeSet<GroundAtom>;
type Subst = BTreeMap<String, Value>;

fn subst_term(t: &Term, s: &Subst) -> Term {
    match t {
        Term::Var(v) => match &s[v] {
            Value::Sym(c) => Term::Const(c.clone()),
            Value::Int(i) => Term::Int(*i),
        },
        Term::App(op, args) => Term::App(*op, args.iter().map(|a| subst_term(a, s)).collect()),
        other => other.clone(),
    }
}

fn ground_atom(a: &Atom, s: &Subst, universe: &[Value]) -> Result<Option<GroundAtom>, GroundError> {
    let mut args = Vec::with_capacity(a.args.len());
    for t in &a.args {
        match eval_term(&subst_term(t, s), universe)? {
            Some(v) if universe.contains(&v) => args.push(v),
            _ => return Ok(None),
        }
    }
    Ok(Some(GroundAtom::new(a.predicate.clone(), args)))
}

fn literal_holds(a: &Atom, s: &Subst, m: &Interp, universe: &[Value]) -> Result<bool, GroundError> {
    if let Some(op) = a.comparison() {
        let l = eval_term(&subst_term(&a.args[0], s), universe)?;
        let r = eval_term(&subst_term(&a.args[1], s), universe)?;
        return Ok(match (l, r) {
            (Some(l), Some(r)) => compare(op, &l, &r),
            _ => false,
        });
    }
    Ok(ground_atom(a, s, universe)?.is_some_and(|g| m.contains(&g)))
}

/// Calls `f` with every extension of `s` to `vars` over the universe;
/// stops early when `f` returns `true`.
fn any_extension(
    vars: &[&str],
    s: &mut Subst,
    universe: &[Value],
    f: &mut impl FnMut(&Subst) -> Result<bool, GroundError>,
) -> Result<bool, GroundError> {
    let Some((v, rest)) = vars.split_first() else {
        return f(s);
    };
    for c in universe {
        s.insert(v.to_string(), c.clone());
        if any_extension(rest, s, universe, f)? {
            s.remove(*v);
            return Ok(true);
        }
    }
    s.remove(*v);
    Ok(false)
}

fn body_holds(r: &NormalRule, s: &Subst, m: &Interp, universe: &[Value]) -> Result<bool, GroundError> {
    for a in &r.pos {
        if !literal_holds(a, s, m, universe)? {
            return Ok(false);
        }
    }
    for a in &r.neg {
        if literal_holds(a, s, m, universe)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some ground instance of a rule for `head` has a true body.
fn supported(p: &NormalProgram, head: &GroundAtom, m: &Interp, universe: &[Value]) -> Result<bool, GroundError> {
    for r in p.rules_for(&head.predicate) {
        let mut s: Subst = r
            .head_vars()
            .into_iter()
            .map(String::from)
            .zip(head.args.iter().cloned())
            .collect();
        let local = r.local_vars();
        if any_extension(&local, &mut s, universe, &mut |s| body_holds(r, s, m, universe))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The Herbrand universe used for `(D, P)`: constants of both, sorted.
pub fn universe(p: &NormalProgram, d: &DataSet) -> Vec<Value> {
    let mut u = p.constants();
    for f in d.iter() {
        u.extend(f.args.iter().cloned());
    }
    u.into_iter().collect()
}

/// Every `arity`-tuple over `universe`, in lexicographic order.
pub fn tuples_over(arity: usize, universe: &[Value]) -> Vec<Vec<Value>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                universe.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Ground atoms of the defined predicates, in predicate then tuple order.
pub fn defined_base(p: &NormalProgram, universe: &[Value]) -> Vec<GroundAtom> {
    p.defined()
        .into_iter()
        .flat_map(|name| {
            tuples_over(p.predicates[name], universe)
                .into_iter()
                .map(move |t| GroundAtom::new(name, t))
        })
        .collect()
}

/// Supported models of `p` whose input part is exactly `d`, by brute force
/// over the defined part of the Herbrand base. Each model includes `d`.
pub fn supported_models(p: &NormalProgram, d: &DataSet) -> Result<BTreeSet<Interp>, CompletionError> {
    let defined = p.defined();
    if let Some(f) = d.iter().find(|f| defined.contains(f.predicate.as_str())) {
        return Err(CompletionError::FactOverDefined { fact: f.to_string() });
    }
    let universe = universe(p, d);
    let base = defined_base(p, &universe);
    if base.len() > SUPPORTED_GUARD {
        return Err(CompletionError::TooLarge {
            atoms: base.len(),
            limit: SUPPORTED_GUARD,
        });
    }
    let mut out = BTreeSet::new();
    'subsets: for bits in 0u32..1 << base.len() {
        let mut m: Interp = d.iter().cloned().collect();
        for (i, a) in base.iter().enumerate() {
            if bits >> i & 1 == 1 {
                m.insert(a.clone());
            }
        }
        for a in &base {
            if m.contains(a) != supported(p, a, &m, &universe)? {
                continue 'subsets;
            }
        }
        out.insert(m);
    }
    Ok(out)
}

/// Whether `m` is a Herbrand model of the completion (over `universe`).
pub fn satisfies_completion(cc: &[Completion], p: &NormalProgram, m: &Interp, universe: &[Value]) -> Result<bool, GroundError> {
    for c in cc {
        for t in tuples_over(c.head.arity(), universe) {
            let a = GroundAtom::new(c.head.predicate.clone(), t);
            let rhs = !c.disjuncts.is_empty() && supported(p, &a, m, universe)?;
            if m.contains(&a) != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{ground_theory_with, GroundOptions};
    use crate::lang::{parse_data, parse_program, Theory};
    use crate::propcore::enumerate_models;

    fn prog(text: &str) -> NormalProgram {
        parse_normal_program(text).unwrap()
    }

    fn show(cc: &[Completion]) -> Vec<String> {
        cc.iter().map(|c| c.to_string()).collect()
    }

    fn interp(atoms: &[&str]) -> Interp {
        atoms
            .iter()
            .map(|a| crate::ground::parse_ground_atom(a).unwrap())
            .collect()
    }

    #[test]
    fn parses_rules() {
        let p = prog("p(X) :- e(X,Y), not p(Y), X != Y.\nq.\nr :- not q.");
        assert_eq!(p.rules.len(), 3);
        assert_eq!(p.rules[0].to_string(), "p(X) :- e(X,Y), X != Y, not p(Y).");
        assert_eq!(p.rules[1].to_string(), "q.");
        let p = prog("p(X) :- e(X), not X = a.");
        assert_eq!(p.rules[0].to_string(), "p(X) :- e(X), X != a.");
        assert_eq!(p.input_predicates().into_iter().collect::<Vec<_>>(), ["e"]);
    }

    #[test]
    fn normal_form_violations() {
        for text in ["p :- not 1 < 2.", "p(a) :- q.", "p(X,X) :- q(X).", "p(X) :- q(X).\np(Y) :- r(Y).", "p(X) :- p(X,X)."] {
            assert!(parse_normal_program(text).is_err(), "{text}");
        }
    }

    #[test]
    fn completion_examples() {
        assert_eq!(show(&clark_completion(&prog("p :- not q.\nq :- not p."))), ["p <=> not q", "q <=> not p"]);
        let empty = NormalProgram::with_predicates(vec![], [("p".to_string(), 0)]).unwrap();
        assert_eq!(show(&clark_completion(&empty)), ["p <=> F"]);
        assert_eq!(show(&clark_completion(&prog("p :- p."))), ["p <=> p"]);
        assert_eq!(
            show(&clark_completion(&prog("p(X) :- e(X,Y), not p(Y).\np(X) :- f(X).")))[2],
            "p(X) <=> exists Y: (e(X,Y), not p(Y)) | f(X)"
        );
    }

    #[test]
    fn translate_single_rule() {
        let out = translate(&prog("p(X) :- e(X,Y), not p(Y).")).to_string();
        assert_eq!(
            out,
            "data e/2.\n\
             d_p_1(X,Y) -> e(X,Y).\n\
             d_p_1(X,Y), p(Y) -> F.\n\
             e(X,Y) -> d_p_1(X,Y) ; p(Y).\n\
             d_p_1(X,Y) -> p(X).\n\
             p(X) -> d_p_1(X,_).\n"
        );
        parse_program(&out, &Bindings::new()).unwrap();
    }

    #[test]
    fn translate_empty_program() {
        let empty = NormalProgram::with_predicates(vec![], [("p".to_string(), 0)]).unwrap();
        assert_eq!(translate(&empty).to_string(), "data p/0.\n");
    }

    #[test]
    fn auxiliary_names_avoid_collisions() {
        let p = prog("p :- d_p_1.\nd_p_1 :- not p.");
        let out = translate(&p);
        let names: BTreeSet<String> = out
            .clauses()
            .flat_map(|c| c.items().map(|i| i.atom().predicate.clone()).collect::<Vec<_>>())
            .collect();
        assert!(names.contains("d_p_1_"), "{out}");
        assert!(names.contains("d_d_p_1_1"), "{out}");
    }

    #[test]
    fn supported_model_examples() {
        let none = DataSet::default();
        assert_eq!(
            supported_models(&prog("p :- not q.\nq :- not p."), &none).unwrap(),
            [interp(&["p"]), interp(&["q"])].into()
        );
        assert_eq!(supported_models(&prog("p :- p."), &none).unwrap(), [interp(&[]), interp(&["p"])].into());
        let d = parse_data("e(a).").unwrap();
        let empty = NormalProgram::with_predicates(vec![], [("e".to_string(), 1)]).unwrap();
        assert_eq!(supported_models(&empty, &d).unwrap(), [interp(&["e(a)"])].into());
    }

    #[test]
    fn supported_models_are_completion_models() {
        // no input predicates: the completion of an input predicate is `e <=> F`
        let p = prog(
            "p(X) :- e(X,Y), not p(Y).\nq(X) :- p(X), X != b.\n\
             e(X,Y) :- X = a, Y = b.\ne(X,Y) :- X = b, Y = a.\ne(X,Y) :- X = b, Y = c.",
        );
        let d = DataSet::default();
        let u = universe(&p, &d);
        let cc = clark_completion(&p);
        let supported = supported_models(&p, &d).unwrap();
        let base = defined_base(&p, &u);
        for bits in 0u32..1 << base.len() {
            let mut m: Interp = d.iter().cloned().collect();
            m.extend(base.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, a)| a.clone()));
            assert_eq!(supported.contains(&m), satisfies_completion(&cc, &p, &m, &u).unwrap());
        }
    }

    #[test]
    fn translation_preserves_supported_models() {
        let p = prog("p :- not q.\nq :- not p.");
        let t = Theory::new(DataSet::default(), translate(&p)).unwrap();
        let gt = ground_theory_with(&t, GroundOptions { herbrand_base: true }).unwrap();
        let projected: BTreeSet<Interp> = enumerate_models(&gt, None)
            .unwrap()
            .iter()
            .map(|m| {
                m.true_atoms()
                    .map(|id| gt.atoms.atom(id).clone())
                    .filter(|a| a.predicate == "p" || a.predicate == "q")
                    .collect()
            })
            .collect();
        assert_eq!(projected, [interp(&["p"]), interp(&["q"])].into());
    }
}
