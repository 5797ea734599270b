//! Abstract syntax and surface syntax of theories: a data set of ground
//! facts paired with a program of universally quantified extended clauses.

mod ast;
mod lexer;
mod parser;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

pub use ast::*;
pub use lexer::Pos;
pub use parser::{parse_data, parse_program};

pub(crate) use lexer::Tok;
pub(crate) use parser::{Cursor, ExprParser};

/// External values for symbolic names (`-c k=3` on the command line).
pub type Bindings = BTreeMap<String, i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: facts must be ground, found `{var}`")]
    VariableInFact { var: String, line: usize, col: usize },
    #[error("predicate `{predicate}` used with arity {first} and {second}")]
    ArityConflict {
        predicate: String,
        first: usize,
        second: usize,
    },
    #[error("{line}:{col}: bound `{name}` has no binding (pass -c {name}=<int>)")]
    UnknownBound { name: String, line: usize, col: usize },
    #[error("line {line}: `_` in antecedent atom `{atom}`; existential arguments belong in consequents")]
    UnderscoreInAntecedent { atom: String, line: usize },
    #[error("cardinality atom over `{predicate}`, which is not a program predicate")]
    CAtomOverNonProgram { predicate: String },
    #[error("the theory has variables but no constants")]
    EmptyUniverse,
}

/// A finite set of ground data atoms, kept in first-insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DataSet {
    facts: Vec<GroundAtom>,
    index: HashSet<GroundAtom>,
}

impl DataSet {
    pub fn insert(&mut self, atom: GroundAtom) -> bool {
        if self.index.contains(&atom) {
            return false;
        }
        self.index.insert(atom.clone());
        self.facts.push(atom);
        true
    }

    pub fn contains(&self, atom: &GroundAtom) -> bool {
        self.index.contains(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundAtom> {
        self.facts.iter()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn extend(&mut self, other: DataSet) {
        for f in other.facts {
            self.insert(f);
        }
    }
}

impl FromIterator<GroundAtom> for DataSet {
    fn from_iter<I: IntoIterator<Item = GroundAtom>>(iter: I) -> Self {
        let mut d = DataSet::default();
        for a in iter {
            d.insert(a);
        }
        d
    }
}

impl std::fmt::Display for DataSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for a in &self.facts {
            writeln!(f, "{a}.")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredicateInfo {
    pub arity: usize,
    pub kind: AtomKind,
}

/// A theory `(D, P)` with atom kinds resolved and the constant table built.
#[derive(Debug, Clone)]
pub struct Theory {
    pub data: DataSet,
    pub program: Program,
    /// Every constant occurring in `D ∪ P`, sorted (symbols, then integers).
    pub constants: Vec<Value>,
    /// Data and program predicates; comparisons are not listed.
    pub predicates: BTreeMap<String, PredicateInfo>,
}

impl Theory {
    pub fn new(data: DataSet, mut program: Program) -> Result<Self, LangError> {
        let mut predicates: BTreeMap<String, PredicateInfo> = BTreeMap::new();
        let mut note = |name: &str, arity: usize, kind: AtomKind| -> Result<(), LangError> {
            match predicates.get_mut(name) {
                Some(info) if info.arity != arity => Err(LangError::ArityConflict {
                    predicate: name.to_string(),
                    first: info.arity,
                    second: arity,
                }),
                Some(info) => {
                    if kind == AtomKind::Data {
                        info.kind = AtomKind::Data;
                    }
                    Ok(())
                }
                None => {
                    predicates.insert(name.to_string(), PredicateInfo { arity, kind });
                    Ok(())
                }
            }
        };

        for f in data.iter() {
            note(&f.predicate, f.args.len(), AtomKind::Data)?;
        }
        for (p, arity) in program.data_decls() {
            note(p, arity, AtomKind::Data)?;
        }
        for c in program.clauses() {
            for item in c.items() {
                let a = item.atom();
                if a.kind != AtomKind::Predefined {
                    note(&a.predicate, a.arity(), AtomKind::Program)?;
                }
            }
        }

        let mut has_vars = false;
        let mut constants: BTreeSet<Value> = data.iter().flat_map(|f| f.args.clone()).collect();
        for s in &mut program.statements {
            let Statement::Clause(c) = s else { continue };
            for item in c.antecedent.iter_mut().chain(c.consequent.iter_mut()) {
                let a = item.atom_mut();
                if a.kind != AtomKind::Predefined {
                    a.kind = predicates[&a.predicate].kind;
                }
                for t in &a.args {
                    t.for_each_constant(&mut |v| {
                        constants.insert(v);
                    });
                    has_vars |= !t.is_ground();
                }
                if let Item::Card(ca) = item {
                    if ca.inner.kind != AtomKind::Program {
                        return Err(LangError::CAtomOverNonProgram {
                            predicate: ca.inner.predicate.clone(),
                        });
                    }
                }
            }
        }
        if constants.is_empty() && has_vars {
            return Err(LangError::EmptyUniverse);
        }

        Ok(Theory {
            data,
            program,
            constants: constants.into_iter().collect(),
            predicates,
        })
    }

    /// Parses and assembles a theory from data and program texts.
    pub fn parse(data: &[&str], program: &[&str], bindings: &Bindings) -> Result<Self, LangError> {
        let mut d = DataSet::default();
        for text in data {
            d.extend(parse_data(text)?);
        }
        let mut p = Program::default();
        for text in program {
            p.extend(parse_program(text, bindings)?);
        }
        Theory::new(d, p)
    }

    pub fn is_data_predicate(&self, name: &str) -> bool {
        self.predicates
            .get(name)
            .is_some_and(|p| p.kind == AtomKind::Data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_resolved_against_data() {
        let t = Theory::parse(
            &["vtx(a). vtx(b). edge(a,b)."],
            &["invc(X) -> vtx(X).\nedge(X,Y) -> invc(X) ; invc(Y).\nX = Y -> F."],
            &Bindings::new(),
        )
        .unwrap();
        assert_eq!(t.predicates["vtx"].kind, AtomKind::Data);
        assert_eq!(t.predicates["edge"].kind, AtomKind::Data);
        assert_eq!(t.predicates["invc"].kind, AtomKind::Program);
        for c in t.program.clauses() {
            for it in c.items() {
                let a = it.atom();
                let expected = match a.predicate.as_str() {
                    "vtx" | "edge" => AtomKind::Data,
                    "invc" => AtomKind::Program,
                    _ => AtomKind::Predefined,
                };
                assert_eq!(a.kind, expected, "{a}");
            }
        }
        assert_eq!(t.constants, vec![Value::from("a"), Value::from("b")]);
    }

    #[test]
    fn arity_conflict_across_files() {
        let err = Theory::parse(&["p(a)."], &["p(X,Y) -> q(X)."], &Bindings::new()).unwrap_err();
        assert!(matches!(err, LangError::ArityConflict { .. }));
    }

    #[test]
    fn catom_over_data_predicate_rejected() {
        let err = Theory::parse(&["v(a)."], &["1 {v(_)}."], &Bindings::new()).unwrap_err();
        assert!(matches!(err, LangError::CAtomOverNonProgram { .. }));
    }

    #[test]
    fn constants_include_program_literals_and_parameters() {
        let b: Bindings = [("n".to_string(), 7)].into();
        let t = Theory::parse(&["pos(2)."], &["q(X) -> X <= n ; r(X + 1, b)."], &b).unwrap();
        assert_eq!(
            t.constants,
            vec![Value::from("b"), Value::Int(1), Value::Int(2), Value::Int(7)]
        );
    }

    #[test]
    fn empty_universe_only_matters_with_variables() {
        assert!(Theory::parse(&[], &["p ; q.\np -> F."], &Bindings::new()).is_ok());
        assert_eq!(
            Theory::parse(&[], &["p(X) -> q(X)."], &Bindings::new()).unwrap_err(),
            LangError::EmptyUniverse
        );
    }
}
