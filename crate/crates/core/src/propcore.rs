//! Propositional semantics: c-atom and clause satisfaction, brute-force
//! model enumeration, and compilation of c-atoms to plain CNF.

use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

use crate::ground::{GroundAtomId, GroundCAtom, GroundClause, GroundTheory};
use crate::par::{self, Exec};

/// Atom count above which [`enumerate_models`] refuses to run without a
/// limit.
pub const ORACLE_GUARD: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropError {
    #[error("{atoms} atoms exceed the enumeration guard of {guard}; pass a limit")]
    TooManyAtoms { atoms: usize, guard: usize },
    #[error("clause {index} is outside the CNF-compilable fragment: {reason}")]
    UnsupportedClause { index: usize, reason: &'static str },
}

/// A total truth assignment: atom `i` is true iff `self.0[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Model(pub Vec<bool>);

impl Model {
    pub fn empty(atoms: usize) -> Self {
        Model(vec![false; atoms])
    }

    pub fn from_ids(atoms: usize, ids: impl IntoIterator<Item = GroundAtomId>) -> Self {
        let mut m = Model::empty(atoms);
        for id in ids {
            m.0[id.index()] = true;
        }
        m
    }

    pub fn from_mask(atoms: usize, mask: u64) -> Self {
        Model((0..atoms).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn contains(&self, id: GroundAtomId) -> bool {
        self.0.get(id.index()).copied().unwrap_or(false)
    }

    pub fn true_atoms(&self) -> impl Iterator<Item = GroundAtomId> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| GroundAtomId(i as u32))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Space-separated names of the true atoms, in id order.
    pub fn render(&self, gt: &GroundTheory) -> String {
        self.true_atoms()
            .map(|id| gt.atoms.atom(id).to_string())
            .join(" ")
    }
}

pub fn sat_catom(c: &GroundCAtom, m: &Model) -> bool {
    let count = c.atoms.iter().filter(|id| m.contains(**id)).count() as u32;
    c.min() <= count && c.upper.is_none_or(|n| count <= n)
}

pub fn sat_clause(cl: &GroundClause, m: &Model) -> bool {
    cl.consequent.iter().any(|c| sat_catom(c, m)) || cl.antecedent.iter().any(|c| !sat_catom(c, m))
}

pub fn check_model(gt: &GroundTheory, m: &Model) -> bool {
    gt.clauses.iter().all(|cl| sat_clause(cl, m))
}

/// The first clause a model violates, for diagnostics.
pub fn first_violation(gt: &GroundTheory, m: &Model) -> Option<usize> {
    gt.clauses.iter().position(|cl| !sat_clause(cl, m))
}

// Bitmask evaluation for the enumerator.

struct MaskCAtom {
    mask: u64,
    lower: u32,
    upper: u32,
}

struct MaskClause {
    antecedent: Vec<MaskCAtom>,
    consequent: Vec<MaskCAtom>,
}

fn mask_catom(c: &GroundCAtom) -> MaskCAtom {
    MaskCAtom {
        mask: c.atoms.iter().fold(0, |m, id| m | 1 << id.0),
        lower: c.min(),
        upper: c.upper.unwrap_or(u32::MAX),
    }
}

impl MaskCAtom {
    fn sat(&self, bits: u64) -> bool {
        let n = (bits & self.mask).count_ones();
        self.lower <= n && n <= self.upper
    }
}

impl MaskClause {
    fn sat(&self, bits: u64) -> bool {
        self.consequent.iter().any(|c| c.sat(bits)) || self.antecedent.iter().any(|c| !c.sat(bits))
    }
}

/// All models in increasing order of their bit pattern (atom 0 is the least
/// significant bit), truncated at `limit`.
pub fn enumerate_models(gt: &GroundTheory, limit: Option<usize>) -> Result<Vec<Model>, PropError> {
    enumerate_models_with(gt, limit, Exec::default())
}

pub fn enumerate_models_with(
    gt: &GroundTheory,
    limit: Option<usize>,
    exec: Exec,
) -> Result<Vec<Model>, PropError> {
    let n = gt.atom_count();
    if n > 64 || (limit.is_none() && n > ORACLE_GUARD) {
        return Err(PropError::TooManyAtoms {
            atoms: n,
            guard: if limit.is_none() { ORACLE_GUARD } else { 64 },
        });
    }
    let clauses: Vec<MaskClause> = gt
        .clauses
        .iter()
        .map(|cl| MaskClause {
            antecedent: cl.antecedent.iter().map(mask_catom).collect(),
            consequent: cl.consequent.iter().map(mask_catom).collect(),
        })
        .collect();
    let sat = |bits: u64| clauses.iter().all(|c| c.sat(bits));
    let end: u64 = if n == 64 { u64::MAX } else { 1u64 << n };

    if let Some(limit) = limit {
        let mut out = Vec::new();
        let mut bits = 0u64;
        while out.len() < limit {
            if sat(bits) {
                out.push(Model::from_mask(n, bits));
            }
            if bits == end - 1 || (n < 64 && bits + 1 == end) {
                break;
            }
            bits += 1;
        }
        return Ok(out);
    }
    Ok(par::flat_map_blocks(exec, 0..end, 1 << 12, |r| {
        r.filter(|&b| sat(b)).map(|b| Model::from_mask(n, b)).collect()
    }))
}

/// A plain CNF over the ground atoms; variable `i + 1` is atom `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfTheory {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfTheory {
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(out, "{l} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn satisfied_by(&self, m: &Model) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = m.0[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }

    /// Brute-force models of the CNF in the same order as [`enumerate_models`].
    pub fn models(&self) -> Result<Vec<Model>, PropError> {
        if self.num_vars > ORACLE_GUARD {
            return Err(PropError::TooManyAtoms {
                atoms: self.num_vars,
                guard: ORACLE_GUARD,
            });
        }
        let n = self.num_vars;
        let masks: Vec<(u64, u64)> = self
            .clauses
            .iter()
            .map(|c| {
                c.iter().fold((0, 0), |(pos, neg), &l| {
                    let bit = 1u64 << (l.unsigned_abs() - 1);
                    if l > 0 {
                        (pos | bit, neg)
                    } else {
                        (pos, neg | bit)
                    }
                })
            })
            .collect();
        Ok((0..1u64 << n)
            .filter(|&b| masks.iter().all(|&(p, q)| b & p != 0 || !b & q != 0))
            .map(|b| Model::from_mask(n, b))
            .collect())
    }
}

fn lit(id: GroundAtomId, positive: bool) -> i32 {
    let v = id.0 as i32 + 1;
    if positive {
        v
    } else {
        -v
    }
}

fn single_atom(c: &GroundCAtom) -> Option<GroundAtomId> {
    (c.atoms.len() == 1 && c.min() == 1).then(|| c.atoms[0])
}

/// `1{p1..pk}` with a vacuous upper bound: a plain disjunction.
fn is_disjunction(c: &GroundCAtom) -> bool {
    c.min() == 1 && c.max() as usize >= c.atoms.len()
}

/// Cardinality clauses of `c`: one negative clause per `(n+1)`-subset and
/// one positive clause per `(k-m+1)`-subset, in lexicographic subset order.
pub fn catom_clauses(c: &GroundCAtom) -> Vec<Vec<i32>> {
    let k = c.atoms.len();
    let mut out = Vec::new();
    if let Some(n) = c.upper {
        let n = n as usize;
        if n < k {
            for s in c.atoms.iter().combinations(n + 1) {
                out.push(s.into_iter().map(|id| lit(*id, false)).collect());
            }
        }
    }
    let m = c.min() as usize;
    if m > k {
        out.push(Vec::new());
    } else if m > 0 {
        for s in c.atoms.iter().combinations(k - m + 1) {
            out.push(s.into_iter().map(|id| lit(*id, true)).collect());
        }
    }
    out
}

/// Compiles a ground theory into CNF without auxiliary variables.
///
/// Antecedents must consist of single-atom c-atoms (`1{p}1` or `1{p}`).
/// The consequent is either a disjunction of such atoms and `1{...}`
/// disjunctions, or one c-atom with arbitrary bounds; in the latter case
/// every cardinality clause is extended with the negated antecedent.
pub fn compile_cnf(gt: &GroundTheory) -> Result<CnfTheory, PropError> {
    let mut clauses = Vec::new();
    for (index, cl) in gt.clauses.iter().enumerate() {
        let mut neg = Vec::with_capacity(cl.antecedent.len());
        for a in &cl.antecedent {
            match single_atom(a) {
                Some(id) => neg.push(lit(id, false)),
                None => {
                    return Err(PropError::UnsupportedClause {
                        index,
                        reason: "antecedent c-atom with more than one atom",
                    })
                }
            }
        }
        if cl.consequent.iter().all(is_disjunction) {
            let mut c = neg;
            for b in &cl.consequent {
                c.extend(b.atoms.iter().map(|id| lit(*id, true)));
            }
            clauses.push(c.into_iter().unique().collect());
        } else if cl.consequent.len() == 1 {
            for mut c in catom_clauses(&cl.consequent[0]) {
                c.extend(&neg);
                clauses.push(c.into_iter().unique().collect());
            }
        } else {
            return Err(PropError::UnsupportedClause {
                index,
                reason: "cardinality c-atom in a disjunctive consequent",
            });
        }
    }
    Ok(CnfTheory {
        num_vars: gt.atom_count(),
        clauses,
    })
}
