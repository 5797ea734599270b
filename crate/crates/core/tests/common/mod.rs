//! Independent oracles shared by the property and acceptance tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use psplus::completion::{self, NormalProgram};
use psplus::families::{self, Graph};
use psplus::ground::{self, GroundOptions, GroundTheory};
use psplus::lang::{Atom, AtomKind, DataSet, GroundAtom, Item, Term, Theory, Value};
use psplus::propcore::{self, Model, ORACLE_GUARD};
use psplus::solver::{self, Mode};

pub type Interp = BTreeSet<GroundAtom>;

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Models as sorted bit patterns, atom 0 in the lowest bit.
pub fn masks(models: &[Model]) -> Vec<u64> {
    let mut out: Vec<u64> = models
        .iter()
        .map(|m| m.0.iter().rev().fold(0, |acc, &b| acc << 1 | u64::from(b)))
        .collect();
    out.sort_unstable();
    out
}

/// Models as sets of true ground atoms.
pub fn as_interps(gt: &GroundTheory, models: &[Model]) -> BTreeSet<Interp> {
    models
        .iter()
        .map(|m| m.true_atoms().map(|id| gt.atoms.atom(id).clone()).collect())
        .collect()
}

/// All models of `gt`: brute force within the oracle guard, otherwise the
/// solver.
pub fn all_models(gt: &GroundTheory) -> BTreeSet<Interp> {
    let models = if gt.atom_count() <= ORACLE_GUARD {
        propcore::enumerate_models(gt, None).unwrap()
    } else {
        solver::solve(gt, Mode::All).models
    };
    as_interps(gt, &models)
}

fn tuples(arity: usize, consts: &[Value]) -> Vec<Vec<Value>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::new();
        for t in &out {
            for c in consts {
                let mut t = t.clone();
                t.push(c.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn term_value(t: &Term, s: &[(String, Value)]) -> Value {
    match t {
        Term::Var(v) => s.iter().find(|(n, _)| n == v).unwrap().1.clone(),
        Term::Const(c) => Value::Sym(c.clone()),
        Term::Int(i) => Value::Int(*i),
        other => panic!("unsupported term {other}"),
    }
}

/// Truth of a program or equality atom under `s`; underscores are read
/// existentially, each one independently.
fn fo_atom(a: &Atom, s: &[(String, Value)], consts: &[Value], m: &Interp) -> bool {
    if a.kind == AtomKind::Predefined {
        let l = term_value(&a.args[0], s);
        let r = term_value(&a.args[1], s);
        return match a.predicate.as_str() {
            "=" => l == r,
            "!=" => l != r,
            p => panic!("unsupported comparison {p}"),
        };
    }
    let holes = a.args.iter().filter(|t| matches!(t, Term::Underscore)).count();
    tuples(holes, consts).into_iter().any(|fill| {
        let mut fill = fill.into_iter();
        let args = a
            .args
            .iter()
            .map(|t| match t {
                Term::Underscore => fill.next().unwrap(),
                t => term_value(t, s),
            })
            .collect();
        m.contains(&GroundAtom::new(a.predicate.clone(), args))
    })
}

/// Herbrand models of a data-free theory without c-atoms, by evaluating
/// every clause under every variable assignment and every interpretation.
/// Returns `None` when the Herbrand base has more than `max_base` atoms.
pub fn first_order_models(t: &Theory, max_base: usize) -> Option<BTreeSet<Interp>> {
    let consts = &t.constants;
    let base: Vec<GroundAtom> = t
        .predicates
        .iter()
        .filter(|(_, i)| i.kind == AtomKind::Program)
        .flat_map(|(p, i)| tuples(i.arity, consts).into_iter().map(|a| GroundAtom::new(p.clone(), a)))
        .collect();
    if base.len() > max_base {
        return None;
    }
    let clauses: Vec<_> = t.program.clauses().collect();
    let mut out = BTreeSet::new();
    for bits in 0u64..1 << base.len() {
        let m: Interp = base
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect();
        let ok = clauses.iter().all(|cl| {
            let vars: Vec<String> = cl.variables().into_iter().map(String::from).collect();
            tuples(vars.len(), consts).into_iter().all(|vals| {
                let s: Vec<(String, Value)> = vars.iter().cloned().zip(vals).collect();
                let holds = |it: &Item| match it {
                    Item::Atom(a) => fo_atom(a, &s, consts, &m),
                    Item::Card(_) => panic!("c-atoms are not supported here"),
                };
                !cl.antecedent.iter().all(holds) || cl.consequent.iter().any(holds)
            })
        });
        if ok {
            out.insert(m);
        }
    }
    Some(out)
}

/// Both sides of the translation check: the supported models of `(p, d)`
/// and the projections of the models of `(d, translate(p))` onto the
/// predicates of `p`, with `d` added back.
pub fn translation_sides(p: &NormalProgram, d: &DataSet) -> (BTreeSet<Interp>, BTreeSet<Interp>) {
    let expected = completion::supported_models(p, d).unwrap();
    let theory = Theory::new(d.clone(), completion::translate(p)).unwrap();
    let gt = ground::ground_theory_with(&theory, GroundOptions { herbrand_base: true }).unwrap();
    let got = all_models(&gt)
        .into_iter()
        .map(|m| {
            m.into_iter()
                .filter(|a| p.predicates.contains_key(&a.predicate))
                .chain(d.iter().cloned())
                .collect()
        })
        .collect();
    (expected, got)
}

/// Size of a minimum vertex cover, by trying every vertex subset.
pub fn brute_force_min_cover(g: &Graph) -> usize {
    (0u32..1 << g.n)
        .filter(|&s| g.edges.iter().all(|&(u, v)| s >> (u - 1) & 1 == 1 || s >> (v - 1) & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// The smallest `k` whose instance has a model, iterating `k` upward.
pub fn solver_min_cover(g: &Graph, catom: bool) -> usize {
    (0..=g.n)
        .find(|&k| {
            let inst = if catom {
                families::vertex_cover_catom(g, k)
            } else {
                families::vertex_cover(g, k)
            };
            let gt = ground::ground_theory(&inst.theory().unwrap()).unwrap();
            let out = solver::solve(&gt, Mode::One);
            if let Some(m) = out.models.first() {
                let sol = families::extract_solution(&inst, &gt, m).unwrap();
                families::check_solution(&inst, &sol).unwrap();
                true
            } else {
                false
            }
        })
        .unwrap()
}

/// Number of n-queens placements, by checking every permutation.
pub fn brute_force_queens(n: usize) -> usize {
    fn place(row: usize, n: usize, cols: &mut Vec<usize>) -> usize {
        if row == n {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            let safe = cols
                .iter()
                .enumerate()
                .all(|(r, &pc)| pc != c && (row - r) != c.abs_diff(pc));
            if safe {
                cols.push(c);
                total += place(row + 1, n, cols);
                cols.pop();
            }
        }
        total
    }
    place(0, n, &mut Vec::new())
}
