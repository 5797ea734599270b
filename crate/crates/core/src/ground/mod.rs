//! Grounding: instantiate every clause over the constants of the theory,
//! evaluate data and predefined atoms, drop tautologies, expand existential
//! arguments and c-atom underscores, and intern the remaining program atoms.

mod format;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::lang::{
    ArithOp, Atom, AtomKind, Bound, CAtom, Comparison, GroundAtom, Item, Term, Theory, Value,
};

pub use format::{read_ground, write_ground, FormatError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("integer overflow while evaluating `{expr}`")]
    Overflow { expr: String },
    #[error("cardinality bound `{bound}` evaluates to a negative number")]
    NegativeBound { bound: String },
    #[error("cardinality bound `{bound}` is too large")]
    BoundTooLarge { bound: String },
}

/// Dense identifier of a ground program atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtomId(pub u32);

impl GroundAtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GroundAtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bijection between ids and ground program atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, GroundAtomId>,
}

impl AtomTable {
    pub fn intern(&mut self, atom: GroundAtom) -> GroundAtomId {
        if let Some(&id) = self.index.get(&atom) {
            return id;
        }
        let id = GroundAtomId(self.atoms.len() as u32);
        self.index.insert(atom.clone(), id);
        self.atoms.push(atom);
        id
    }

    pub fn get(&self, atom: &GroundAtom) -> Option<GroundAtomId> {
        self.index.get(atom).copied()
    }

    pub fn atom(&self, id: GroundAtomId) -> &GroundAtom {
        &self.atoms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GroundAtomId, &GroundAtom)> {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (GroundAtomId(i as u32), a))
    }
}

/// `m {p1, ..., pk} n` over interned atoms. `m > n` is legal and never
/// satisfiable; an upper bound above `k` is vacuous.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundCAtom {
    pub lower: Option<u32>,
    pub atoms: Vec<GroundAtomId>,
    pub upper: Option<u32>,
}

impl GroundCAtom {
    /// `1{p}1`, the c-atom form of an ordinary atom.
    pub fn atom(id: GroundAtomId) -> Self {
        GroundCAtom {
            lower: Some(1),
            atoms: vec![id],
            upper: Some(1),
        }
    }

    /// `1{p1, ..., pk}`, the c-atom form of a disjunction.
    pub fn any(atoms: Vec<GroundAtomId>) -> Self {
        GroundCAtom {
            lower: Some(1),
            atoms,
            upper: None,
        }
    }

    pub fn new(lower: Option<u32>, atoms: Vec<GroundAtomId>, upper: Option<u32>) -> Self {
        GroundCAtom {
            lower,
            atoms,
            upper,
        }
    }

    pub fn min(&self) -> u32 {
        self.lower.unwrap_or(0)
    }

    /// The effective upper bound, `k` when absent.
    pub fn max(&self) -> u32 {
        self.upper.unwrap_or(self.atoms.len() as u32)
    }

    pub fn display<'a>(&'a self, table: &'a AtomTable) -> impl fmt::Display + 'a {
        DisplayCAtom { c: self, table }
    }
}

struct DisplayCAtom<'a> {
    c: &'a GroundCAtom,
    table: &'a AtomTable,
}

impl fmt::Display for DisplayCAtom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.c.lower {
            write!(f, "{m}")?;
        }
        f.write_str("{")?;
        for (i, id) in self.c.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.table.atom(*id))?;
        }
        f.write_str("}")?;
        if let Some(n) = self.c.upper {
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroundClause {
    pub antecedent: Vec<GroundCAtom>,
    pub consequent: Vec<GroundCAtom>,
}

impl GroundClause {
    pub fn new(antecedent: Vec<GroundCAtom>, consequent: Vec<GroundCAtom>) -> Self {
        GroundClause {
            antecedent,
            consequent,
        }
    }

    pub fn display<'a>(&'a self, table: &'a AtomTable) -> impl fmt::Display + 'a {
        DisplayClause { c: self, table }
    }
}

struct DisplayClause<'a> {
    c: &'a GroundClause,
    table: &'a AtomTable,
}

impl fmt::Display for DisplayClause<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, xs: &[GroundCAtom], sep: &str, empty: &str| {
            if xs.is_empty() {
                return f.write_str(empty);
            }
            for (i, c) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{}", c.display(self.table))?;
            }
            Ok(())
        };
        side(f, &self.c.antecedent, " & ", "T")?;
        f.write_str(" => ")?;
        side(f, &self.c.consequent, " | ", "F")
    }
}

/// A propositional theory with native c-atoms, plus the data it was
/// grounded against.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundTheory {
    pub atoms: AtomTable,
    pub clauses: Vec<GroundClause>,
    pub data: Vec<GroundAtom>,
}

impl GroundTheory {
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Looks up an atom by its printed name, e.g. `q(b,c)`.
    pub fn id_of(&self, name: &str) -> Option<GroundAtomId> {
        let atom = parse_ground_atom(name)?;
        self.atoms.get(&atom)
    }
}

/// Parses `p(a,-1,c)` into a ground atom.
pub fn parse_ground_atom(name: &str) -> Option<GroundAtom> {
    let name = name.trim();
    let (pred, rest) = match name.find('(') {
        Some(i) => (&name[..i], Some(&name[i + 1..])),
        None => (name, None),
    };
    if pred.is_empty() || !pred.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return None;
    }
    let args = match rest {
        None => vec![],
        Some(r) => r
            .strip_suffix(')')?
            .split(',')
            .map(|s| {
                let s = s.trim();
                match s.parse::<i64>() {
                    Ok(i) => Some(Value::Int(i)),
                    Err(_) if !s.is_empty() => Some(Value::Sym(s.to_string())),
                    Err(_) => None,
                }
            })
            .collect::<Option<Vec<_>>>()?,
    };
    Some(GroundAtom::new(pred, args))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GroundOptions {
    /// Intern every program atom of the Herbrand base, including atoms that
    /// occur in no ground clause. Those are appended after the others.
    pub herbrand_base: bool,
}

/// A variable assignment used by the single-construct helpers below.
pub type Substitution = BTreeMap<String, Value>;

// ---------------------------------------------------------------------------
// Constant table and compiled clause members.

struct ConstTable {
    values: Vec<Value>,
    syms: HashMap<String, u32>,
    ints: HashMap<i64, u32>,
}

impl ConstTable {
    fn new(values: Vec<Value>) -> Self {
        let mut syms = HashMap::new();
        let mut ints = HashMap::new();
        for (i, v) in values.iter().enumerate() {
            match v {
                Value::Sym(s) => syms.insert(s.clone(), i as u32),
                Value::Int(n) => ints.insert(*n, i as u32),
            };
        }
        ConstTable { values, syms, ints }
    }

    fn lookup(&self, v: &Value) -> Option<u32> {
        match v {
            Value::Sym(s) => self.syms.get(s).copied(),
            Value::Int(n) => self.ints.get(n).copied(),
        }
    }

    fn len(&self) -> u32 {
        self.values.len() as u32
    }
}

#[derive(Debug, Clone)]
enum CTerm {
    Const(u32),
    Var(usize),
    Under(usize),
    App(ArithOp, Vec<CTerm>, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MemberKind {
    Predefined(Comparison),
    Data,
    Program,
}

#[derive(Debug)]
struct CMember {
    kind: MemberKind,
    pred: u32,
    args: Vec<CTerm>,
    underscores: usize,
    /// `Some` for c-atoms (resolved bounds), `None` for ordinary atoms.
    card: Option<(Option<u32>, Option<u32>)>,
    /// Number of assigned variables after which the member is ground.
    ready: usize,
}

/// Result of evaluating one member of a clause instance.
#[derive(Debug, Clone)]
enum Eval {
    True,
    False,
    /// A residual c-atom over program atom keys `[pred, args...]`.
    Keep {
        lower: Option<u32>,
        keys: Vec<Vec<u32>>,
        upper: Option<u32>,
    },
}

struct Ctx {
    consts: ConstTable,
    /// Underscores range over the first `universe` constants.
    universe: u32,
    preds: HashMap<String, u32>,
    pred_names: Vec<String>,
    data: HashSet<Vec<u32>>,
    interned: HashMap<Vec<u32>, GroundAtomId>,
    table: AtomTable,
}

impl Ctx {
    fn new(constants: Vec<Value>) -> Self {
        Ctx {
            universe: constants.len() as u32,
            consts: ConstTable::new(constants),
            preds: HashMap::new(),
            pred_names: Vec::new(),
            data: HashSet::new(),
            interned: HashMap::new(),
            table: AtomTable::default(),
        }
    }

    fn pred(&mut self, name: &str) -> u32 {
        if let Some(&p) = self.preds.get(name) {
            return p;
        }
        let p = self.pred_names.len() as u32;
        self.preds.insert(name.to_string(), p);
        self.pred_names.push(name.to_string());
        p
    }

    fn add_data(&mut self, atom: &GroundAtom) {
        let mut key = vec![self.pred(&atom.predicate)];
        for v in &atom.args {
            key.push(self.consts.lookup(v).expect("data constants are in the table"));
        }
        self.data.insert(key);
    }

    fn compile_term(&self, t: &Term, vars: &[&str], unders: &mut usize) -> CTerm {
        match t {
            Term::Const(s) => CTerm::Const(self.consts.lookup(&Value::Sym(s.clone())).unwrap()),
            Term::Int(i) | Term::Param { value: i, .. } => {
                CTerm::Const(self.consts.lookup(&Value::Int(*i)).unwrap())
            }
            Term::Var(v) => CTerm::Var(vars.iter().position(|x| x == v).unwrap()),
            Term::Underscore => {
                *unders += 1;
                CTerm::Under(*unders - 1)
            }
            Term::App(op, args) => CTerm::App(
                *op,
                args.iter()
                    .map(|a| self.compile_term(a, vars, unders))
                    .collect(),
                t.to_string(),
            ),
        }
    }

    fn compile_item(&mut self, item: &Item, vars: &[&str]) -> Result<CMember, GroundError> {
        let atom = item.atom();
        let kind = match atom.kind {
            AtomKind::Predefined => MemberKind::Predefined(atom.comparison().unwrap()),
            AtomKind::Data => MemberKind::Data,
            AtomKind::Program => MemberKind::Program,
        };
        let mut unders = 0;
        let args: Vec<CTerm> = atom
            .args
            .iter()
            .map(|t| self.compile_term(t, vars, &mut unders))
            .collect();
        let mut ready = 0;
        for t in &atom.args {
            t.for_each_var(&mut |v| {
                ready = ready.max(vars.iter().position(|x| *x == v).unwrap() + 1);
            });
        }
        let card = match item {
            Item::Atom(_) => None,
            Item::Card(c) => Some((resolve_bound(&c.lower)?, resolve_bound(&c.upper)?)),
        };
        Ok(CMember {
            kind,
            pred: self.pred(&atom.predicate),
            args,
            underscores: unders,
            card,
            ready,
        })
    }

    fn eval_term(&self, t: &CTerm, assign: &[u32], under: &[u32]) -> Result<Option<u32>, GroundError> {
        Ok(match t {
            CTerm::Const(c) => Some(*c),
            CTerm::Var(v) => Some(assign[*v]),
            CTerm::Under(u) => Some(under[*u]),
            CTerm::App(op, args, text) => {
                let mut nums = Vec::with_capacity(args.len());
                for a in args {
                    let Some(c) = self.eval_term(a, assign, under)? else {
                        return Ok(None);
                    };
                    let Some(n) = self.consts.values[c as usize].as_int() else {
                        return Ok(None);
                    };
                    nums.push(n);
                }
                match apply_arith(*op, &nums) {
                    Arith::Value(r) => self.consts.ints.get(&r).copied(),
                    Arith::Undefined => None,
                    Arith::Overflow => return Err(GroundError::Overflow { expr: text.clone() }),
                }
            }
        })
    }

    /// Fills `key` with `[pred, args...]`; `false` if an argument has no value.
    fn build_key(
        &self,
        m: &CMember,
        assign: &[u32],
        under: &[u32],
        key: &mut Vec<u32>,
    ) -> Result<bool, GroundError> {
        key.clear();
        key.push(m.pred);
        for a in &m.args {
            match self.eval_term(a, assign, under)? {
                Some(c) => key.push(c),
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// All keys obtained by replacing the underscores with constants, in
    /// constant-table order, skipping instances whose arithmetic fails.
    fn expand(&self, m: &CMember, assign: &[u32]) -> Result<Vec<Vec<u32>>, GroundError> {
        let n = self.universe;
        let mut out = Vec::new();
        let mut under = vec![0u32; m.underscores];
        let mut key = Vec::with_capacity(m.args.len() + 1);
        if m.underscores > 0 && n == 0 {
            return Ok(out);
        }
        loop {
            if self.build_key(m, assign, &under, &mut key)? && !out.contains(&key) {
                out.push(key.clone());
            }
            // odometer, last underscore fastest
            let mut i = m.underscores;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                under[i] += 1;
                if under[i] < n {
                    break;
                }
                under[i] = 0;
            }
        }
    }

    fn eval_member(&self, m: &CMember, assign: &[u32], scratch: &mut Vec<u32>) -> Result<Eval, GroundError> {
        match m.kind {
            MemberKind::Predefined(op) => {
                let l = self.eval_term(&m.args[0], assign, &[])?;
                let r = self.eval_term(&m.args[1], assign, &[])?;
                Ok(match (l, r) {
                    (Some(l), Some(r)) => {
                        let (lv, rv) = (&self.consts.values[l as usize], &self.consts.values[r as usize]);
                        truth(compare(op, lv, rv))
                    }
                    _ => Eval::False,
                })
            }
            MemberKind::Data if m.underscores == 0 => {
                let ok = self.build_key(m, assign, &[], scratch)?;
                Ok(truth(ok && self.data.contains(scratch.as_slice())))
            }
            MemberKind::Data => {
                let keys = self.expand(m, assign)?;
                Ok(truth(keys.iter().any(|k| self.data.contains(k))))
            }
            MemberKind::Program => match m.card {
                None if m.underscores == 0 => {
                    if self.build_key(m, assign, &[], scratch)? {
                        Ok(Eval::Keep {
                            lower: Some(1),
                            keys: vec![scratch.clone()],
                            upper: Some(1),
                        })
                    } else {
                        Ok(Eval::False)
                    }
                }
                None => {
                    let keys = self.expand(m, assign)?;
                    Ok(if keys.is_empty() {
                        Eval::False
                    } else {
                        Eval::Keep {
                            lower: Some(1),
                            keys,
                            upper: None,
                        }
                    })
                }
                Some((lower, upper)) => {
                    let keys = self.expand(m, assign)?;
                    Ok(static_card(lower, keys, upper))
                }
            },
        }
    }

    fn intern_key(&mut self, key: &[u32]) -> GroundAtomId {
        if let Some(&id) = self.interned.get(key) {
            return id;
        }
        let atom = GroundAtom::new(
            self.pred_names[key[0] as usize].clone(),
            key[1..]
                .iter()
                .map(|&c| self.consts.values[c as usize].clone())
                .collect(),
        );
        let id = self.table.intern(atom);
        self.interned.insert(key.to_vec(), id);
        id
    }

    fn intern_card(&mut self, e: &Eval) -> GroundCAtom {
        let Eval::Keep { lower, keys, upper } = e else {
            unreachable!("only residual members are interned")
        };
        GroundCAtom {
            lower: *lower,
            atoms: keys.iter().map(|k| self.intern_key(k)).collect(),
            upper: *upper,
        }
    }
}

fn truth(b: bool) -> Eval {
    if b {
        Eval::True
    } else {
        Eval::False
    }
}

/// Folds c-atoms whose truth does not depend on the model.
fn static_card(lower: Option<u32>, keys: Vec<Vec<u32>>, upper: Option<u32>) -> Eval {
    let k = keys.len() as u32;
    let m = lower.unwrap_or(0);
    if m > k || upper.is_some_and(|n| m > n) {
        Eval::False
    } else if m == 0 && upper.is_none_or(|n| n >= k) {
        Eval::True
    } else {
        Eval::Keep { lower, keys, upper }
    }
}

fn resolve_bound(b: &Option<Bound>) -> Result<Option<u32>, GroundError> {
    match b {
        None => Ok(None),
        Some(b) => {
            let v = b.value();
            if v < 0 {
                return Err(GroundError::NegativeBound {
                    bound: b.to_string(),
                });
            }
            u32::try_from(v)
                .map(Some)
                .map_err(|_| GroundError::BoundTooLarge {
                    bound: b.to_string(),
                })
        }
    }
}

enum Arith {
    Value(i64),
    Undefined,
    Overflow,
}

fn apply_arith(op: ArithOp, args: &[i64]) -> Arith {
    let r = match op {
        ArithOp::Add => args[0].checked_add(args[1]),
        ArithOp::Sub => args[0].checked_sub(args[1]),
        ArithOp::Mul => args[0].checked_mul(args[1]),
        ArithOp::Mod if args[1] == 0 => return Arith::Undefined,
        ArithOp::Mod => args[0].checked_rem_euclid(args[1]),
        ArithOp::Abs => args[0].checked_abs(),
    };
    match r {
        Some(v) => Arith::Value(v),
        None => Arith::Overflow,
    }
}

/// Standard interpretation of the comparison predicates. Ordering
/// comparisons on anything but two integers are type errors and false.
pub fn compare(op: Comparison, l: &Value, r: &Value) -> bool {
    match op {
        Comparison::Eq => l == r,
        Comparison::Ne => l != r,
        _ => match (l, r) {
            (Value::Int(a), Value::Int(b)) => match op {
                Comparison::Lt => a < b,
                Comparison::Le => a <= b,
                Comparison::Gt => a > b,
                Comparison::Ge => a >= b,
                Comparison::Eq | Comparison::Ne => unreachable!(),
            },
            _ => false,
        },
    }
}

// ---------------------------------------------------------------------------
// Single-construct helpers.

fn collect_literals(t: &Term, out: &mut Vec<Value>) {
    t.for_each_constant(&mut |v| {
        if !out.contains(&v) {
            out.push(v);
        }
    });
}

fn helper_ctx(constants: &[Value], atom: &Atom, subst: &Substitution) -> (Ctx, Vec<String>, Vec<u32>) {
    let mut values: Vec<Value> = constants.to_vec();
    for t in &atom.args {
        collect_literals(t, &mut values);
    }
    for v in subst.values() {
        if !values.contains(v) {
            values.push(v.clone());
        }
    }
    let mut ctx = Ctx::new(values);
    ctx.universe = constants.len() as u32;
    let vars: Vec<String> = subst.keys().cloned().collect();
    let assign: Vec<u32> = subst.values().map(|v| ctx.consts.lookup(v).unwrap()).collect();
    (ctx, vars, assign)
}

/// Evaluates a ground term. `None` means the value is undefined: an
/// operand is not an integer, the result is not a constant of the theory,
/// or a `mod` by zero.
pub fn eval_term(t: &Term, constants: &[Value]) -> Result<Option<Value>, GroundError> {
    let mut values = constants.to_vec();
    // Literals of the term itself occur in the theory by definition.
    collect_literals(t, &mut values);
    let ctx = Ctx::new(values);
    let mut unders = 0;
    let ct = ctx.compile_term(t, &[], &mut unders);
    Ok(ctx.eval_term(&ct, &[], &[])?.map(|c| ctx.consts.values[c as usize].clone()))
}

/// Evaluates a ground comparison atom; type errors and undefined arithmetic
/// make it false.
pub fn eval_predefined(a: &Atom, constants: &[Value]) -> Result<bool, GroundError> {
    let op = a.comparison().expect("a comparison atom");
    let l = eval_term(&a.args[0], constants)?;
    let r = eval_term(&a.args[1], constants)?;
    Ok(match (l, r) {
        (Some(l), Some(r)) => compare(op, &l, &r),
        _ => false,
    })
}

/// Applies a substitution to an atom without underscores. `None` when an
/// argument's arithmetic is undefined, which makes the atom false.
pub fn instantiate_atom(
    atom: &Atom,
    subst: &Substitution,
    constants: &[Value],
) -> Result<Option<GroundAtom>, GroundError> {
    let (ctx, vars, assign) = helper_ctx(constants, atom, subst);
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let mut unders = 0;
    let args: Vec<CTerm> = atom
        .args
        .iter()
        .map(|t| ctx.compile_term(t, &vars, &mut unders))
        .collect();
    let mut out = Vec::new();
    for a in &args {
        match ctx.eval_term(a, &assign, &[])? {
            Some(c) => out.push(ctx.consts.values[c as usize].clone()),
            None => return Ok(None),
        }
    }
    Ok(Some(GroundAtom::new(atom.predicate.clone(), out)))
}

fn helper_expand(
    atom: &Atom,
    card: Option<(Option<u32>, Option<u32>)>,
    subst: &Substitution,
    constants: &[Value],
    table: &mut AtomTable,
) -> Result<GroundCAtom, GroundError> {
    let (mut ctx, vars, assign) = helper_ctx(constants, atom, subst);
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let item = match card {
        None => Item::Atom(atom.clone()),
        Some((lo, hi)) => Item::Card(CAtom {
            lower: lo.map(|v| Bound::Lit(v as i64)),
            inner: atom.clone(),
            upper: hi.map(|v| Bound::Lit(v as i64)),
        }),
    };
    let mut m = ctx.compile_item(&item, &vars)?;
    m.kind = MemberKind::Program;
    let keys = ctx.expand(&m, &assign)?;
    ctx.table = std::mem::take(table);
    ctx.interned = ctx
        .table
        .iter()
        .filter_map(|(id, a)| {
            let mut key = vec![*ctx.preds.get(&a.predicate)?];
            for v in &a.args {
                key.push(ctx.consts.lookup(v)?);
            }
            Some((key, id))
        })
        .collect();
    let (lower, upper) = card.unwrap_or((Some(1), None));
    let out = ctx.intern_card(&Eval::Keep { lower, keys, upper });
    *table = ctx.table;
    Ok(out)
}

/// Expands an existential consequent atom `b(s)` (underscores mark the
/// existential positions) into `1{b(s1), ..., b(sk)}`.
pub fn expand_existential(
    atom: &Atom,
    subst: &Substitution,
    constants: &[Value],
    table: &mut AtomTable,
) -> Result<GroundCAtom, GroundError> {
    helper_expand(atom, None, subst, constants, table)
}

/// Instantiates a c-atom under a substitution of its non-underscore
/// variables. The result is not folded even when its truth is fixed.
pub fn instantiate_catom(
    c: &CAtom,
    subst: &Substitution,
    constants: &[Value],
    table: &mut AtomTable,
) -> Result<GroundCAtom, GroundError> {
    let card = (resolve_bound(&c.lower)?, resolve_bound(&c.upper)?);
    helper_expand(&c.inner, Some(card), subst, constants, table)
}

// ---------------------------------------------------------------------------
// Whole-theory grounding.

/// Size of a grounding, without keeping the clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GroundStats {
    pub atoms: usize,
    pub clauses: usize,
    pub catom_members: usize,
}

struct ClauseWalk<'a> {
    members: &'a [CMember],
    n_ante: usize,
    nvars: usize,
    /// Member indices grouped by readiness depth.
    by_depth: Vec<Vec<usize>>,
}

fn walk<F>(
    ctx: &mut Ctx,
    w: &ClauseWalk<'_>,
    depth: usize,
    assign: &mut Vec<u32>,
    results: &mut Vec<Eval>,
    scratch: &mut Vec<u32>,
    emit: &mut F,
) -> Result<(), GroundError>
where
    F: FnMut(&mut Ctx, &[Eval], usize),
{
    for &i in &w.by_depth[depth] {
        let e = ctx.eval_member(&w.members[i], assign, scratch)?;
        let antecedent = i < w.n_ante;
        match (&e, antecedent) {
            (Eval::False, true) | (Eval::True, false) => return Ok(()),
            _ => {}
        }
        results[i] = e;
    }
    if depth == w.nvars {
        emit(ctx, results, w.n_ante);
        return Ok(());
    }
    for c in 0..ctx.consts.len() {
        assign[depth] = c;
        walk(ctx, w, depth + 1, assign, results, scratch, emit)?;
    }
    Ok(())
}

fn ground_with<F>(t: &Theory, opts: GroundOptions, mut sink: F) -> Result<Ctx, GroundError>
where
    F: FnMut(&mut Ctx, GroundClause),
{
    let mut ctx = Ctx::new(t.constants.clone());
    for f in t.data.iter() {
        ctx.add_data(f);
    }
    for clause in t.program.clauses() {
        let vars = clause.variables();
        let members: Vec<CMember> = clause
            .items()
            .map(|it| ctx.compile_item(it, &vars))
            .collect::<Result<_, _>>()?;
        let mut by_depth = vec![Vec::new(); vars.len() + 1];
        for (i, m) in members.iter().enumerate() {
            by_depth[m.ready].push(i);
        }
        let w = ClauseWalk {
            members: &members,
            n_ante: clause.antecedent.len(),
            nvars: vars.len(),
            by_depth,
        };
        let mut assign = vec![0u32; vars.len()];
        let mut results = vec![Eval::True; members.len()];
        let mut scratch = Vec::new();
        let mut emit = |ctx: &mut Ctx, results: &[Eval], n_ante: usize| {
            let mut out = GroundClause::default();
            for (i, e) in results.iter().enumerate() {
                if let Eval::Keep { .. } = e {
                    let c = ctx.intern_card(e);
                    if i < n_ante {
                        out.antecedent.push(c);
                    } else {
                        out.consequent.push(c);
                    }
                }
            }
            sink(ctx, out);
        };
        walk(&mut ctx, &w, 0, &mut assign, &mut results, &mut scratch, &mut emit)?;
    }

    if opts.herbrand_base {
        let n = ctx.consts.len();
        for (name, info) in &t.predicates {
            if info.kind != AtomKind::Program {
                continue;
            }
            let p = ctx.pred(name);
            let mut tuple = vec![0u32; info.arity];
            if info.arity > 0 && n == 0 {
                continue;
            }
            'tuples: loop {
                let mut key = vec![p];
                key.extend_from_slice(&tuple);
                ctx.intern_key(&key);
                let mut i = info.arity;
                loop {
                    if i == 0 {
                        break 'tuples;
                    }
                    i -= 1;
                    tuple[i] += 1;
                    if tuple[i] < n {
                        break;
                    }
                    tuple[i] = 0;
                }
            }
        }
    }
    Ok(ctx)
}

/// Grounds a theory into propositional clauses with native c-atoms.
///
/// Clause order is program order, then lexicographic substitution order
/// (variables in order of first occurrence, constants in table order).
/// Members whose value is decided during evaluation are dropped or make
/// the instance a tautology; partial instances are pruned as soon as a
/// ground antecedent member is false or a ground consequent member true.
pub fn ground_theory(t: &Theory) -> Result<GroundTheory, GroundError> {
    ground_theory_with(t, GroundOptions::default())
}

pub fn ground_theory_with(t: &Theory, opts: GroundOptions) -> Result<GroundTheory, GroundError> {
    let mut clauses = Vec::new();
    let ctx = ground_with(t, opts, |_, c| clauses.push(c))?;
    Ok(GroundTheory {
        atoms: ctx.table,
        clauses,
        data: t.data.iter().cloned().collect(),
    })
}

/// Counts the grounding without materializing the clause list.
pub fn ground_stats(t: &Theory) -> Result<GroundStats, GroundError> {
    let mut stats = GroundStats::default();
    let ctx = ground_with(t, GroundOptions::default(), |_, c| {
        stats.clauses += 1;
        stats.catom_members += c.antecedent.len() + c.consequent.len();
    })?;
    stats.atoms = ctx.table.len();
    Ok(stats)
}

#[cfg(test)]
mod tests;
