//! Seeded random instances for property tests and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::completion::{NormalProgram, NormalRule};
use crate::ground::{AtomTable, GroundAtomId, GroundCAtom, GroundClause, GroundTheory};
use crate::lang::{Atom, Comparison, DataSet, GroundAtom, Term, Value};

fn atoms(n: usize) -> AtomTable {
    let mut t = AtomTable::default();
    for i in 0..n {
        t.intern(GroundAtom::new(format!("x{i}"), vec![]));
    }
    t
}

fn pick_atoms<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<GroundAtomId> {
    let ids: Vec<u32> = (0..n as u32).collect();
    ids.choose_multiple(rng, k.min(n)).map(|&i| GroundAtomId(i)).collect()
}

fn random_bound<R: Rng>(rng: &mut R, k: usize, slack: usize) -> Option<u32> {
    rng.gen_bool(0.7).then(|| rng.gen_range(0..=k + slack) as u32)
}

fn random_catom<R: Rng>(rng: &mut R, n: usize) -> GroundCAtom {
    if rng.gen_bool(0.4) {
        return GroundCAtom::atom(pick_atoms(rng, n, 1)[0]);
    }
    let k = rng.gen_range(1..=4.min(n));
    let members = pick_atoms(rng, n, k);
    GroundCAtom::new(random_bound(rng, k, 1), members, random_bound(rng, k, 1))
}

/// A ground theory with arbitrary c-atoms in any position.
pub fn ground_theory<R: Rng>(rng: &mut R, max_atoms: usize, max_clauses: usize) -> GroundTheory {
    let n = rng.gen_range(1..=max_atoms);
    let clauses = (0..rng.gen_range(0..=max_clauses))
        .map(|_| {
            let ante = (0..rng.gen_range(0..=2)).map(|_| random_catom(rng, n)).collect();
            let cons = (0..rng.gen_range(0..=3)).map(|_| random_catom(rng, n)).collect();
            GroundClause::new(ante, cons)
        })
        .collect();
    GroundTheory {
        atoms: atoms(n),
        clauses,
        data: vec![],
    }
}

/// A ground theory inside the CNF-compilable fragment. Cardinality
/// consequents keep `m <= k`.
pub fn cnf_fragment_theory<R: Rng>(rng: &mut R, max_atoms: usize, max_clauses: usize) -> GroundTheory {
    let n = rng.gen_range(1..=max_atoms);
    let clauses = (0..rng.gen_range(0..=max_clauses))
        .map(|_| {
            let ante: Vec<GroundCAtom> = (0..rng.gen_range(0..=2))
                .map(|_| GroundCAtom::atom(pick_atoms(rng, n, 1)[0]))
                .collect();
            if rng.gen_bool(0.5) {
                let k = rng.gen_range(1..=5.min(n));
                let members = pick_atoms(rng, n, k);
                let c = GroundCAtom::new(random_bound(rng, k, 0), members, random_bound(rng, k, 1));
                GroundClause::new(ante, vec![c])
            } else {
                let cons = (0..rng.gen_range(0..=3))
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            GroundCAtom::atom(pick_atoms(rng, n, 1)[0])
                        } else {
                            let k = rng.gen_range(1..=3.min(n));
                            GroundCAtom::any(pick_atoms(rng, n, k))
                        }
                    })
                    .collect();
                GroundClause::new(ante, cons)
            }
        })
        .collect();
    GroundTheory {
        atoms: atoms(n),
        clauses,
        data: vec![],
    }
}

/// Program text over predicates `p` and `q` (arity at most 2), constants
/// among `a, b, c`, variables `X, Y`, with equalities and existential
/// consequents but no data and no c-atoms. Returns the text and the
/// predicate arities.
pub fn micro_program<R: Rng>(rng: &mut R) -> (String, Vec<(&'static str, usize)>) {
    let consts = ["a", "b", "c"];
    let nconst = rng.gen_range(1..=3);
    let preds: Vec<(&'static str, usize)> = ["p", "q"]
        .into_iter()
        .take(rng.gen_range(1..=2))
        .map(|p| (p, rng.gen_range(0..=2)))
        .collect();
    let mut text = String::new();
    // make every chosen constant occur
    for c in &consts[..nconst] {
        let (p, arity) = preds[0];
        if arity > 0 {
            let args = vec![*c; arity].join(",");
            text.push_str(&format!("{p}({args}) -> {p}({args}).\n"));
        } else {
            text.push_str(&format!("{c} = {c} -> {p}.\n"));
        }
    }
    let term = |rng: &mut R, under: bool| -> String {
        match rng.gen_range(0..if under { 4 } else { 3 }) {
            0 => "X".into(),
            1 => "Y".into(),
            2 => consts[rng.gen_range(0..nconst)].into(),
            _ => "_".into(),
        }
    };
    for _ in 0..rng.gen_range(1..=3) {
        let mut ante = Vec::new();
        let mut cons = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let (p, arity) = *preds.choose(rng).unwrap();
            let args: Vec<String> = (0..arity).map(|_| term(rng, false)).collect();
            ante.push(atom_text(p, &args));
        }
        for _ in 0..rng.gen_range(0..=2) {
            if rng.gen_bool(0.25) {
                cons.push(format!("{} = {}", term(rng, false), term(rng, false)));
            } else {
                let (p, arity) = *preds.choose(rng).unwrap();
                let args: Vec<String> = (0..arity).map(|_| term(rng, true)).collect();
                cons.push(atom_text(p, &args));
            }
        }
        let ante = if ante.is_empty() { String::new() } else { ante.join(", ") + " " };
        let cons = if cons.is_empty() { "F".to_string() } else { cons.join(" ; ") };
        text.push_str(&format!("{ante}-> {cons}.\n"));
    }
    (text, preds)
}

fn atom_text(p: &str, args: &[String]) -> String {
    if args.is_empty() {
        p.to_string()
    } else {
        format!("{p}({})", args.join(","))
    }
}

/// A random normal program over at most three predicates of arity at most
/// two, at most four rules and at most three constants, with random facts
/// for its input predicates. Returns `None` for draws whose defined
/// Herbrand base exceeds `max_defined_atoms` or whose universe is empty.
pub fn normal_program<R: Rng>(rng: &mut R, max_defined_atoms: usize) -> Option<(NormalProgram, DataSet)> {
    let consts: Vec<&str> = ["a", "b", "c"][..rng.gen_range(1..=3)].to_vec();
    let preds: Vec<(String, usize)> = ["p", "q", "r"]
        .iter()
        .take(rng.gen_range(1..=3))
        .map(|p| (p.to_string(), rng.gen_range(0..=2)))
        .collect();
    let head_vars = ["X1", "X2"];
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let (hp, ha) = preds.choose(rng).unwrap().clone();
        let head = Atom::new(hp, head_vars[..ha].iter().map(|v| Term::Var(v.to_string())).collect());
        let vars: Vec<&str> = head_vars[..ha].iter().copied().chain(["Y1"]).collect();
        let term = |rng: &mut R| -> Term {
            if rng.gen_bool(0.75) {
                Term::Var(vars.choose(rng).unwrap().to_string())
            } else {
                Term::Const(consts.choose(rng).unwrap().to_string())
            }
        };
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for _ in 0..rng.gen_range(0..=3) {
            if rng.gen_bool(0.15) {
                let op = if rng.gen_bool(0.5) { Comparison::Eq } else { Comparison::Ne };
                pos.push(Atom::compare(op, term(rng), term(rng)));
                continue;
            }
            let (p, a) = preds.choose(rng).unwrap().clone();
            let atom = Atom::new(p, (0..a).map(|_| term(rng)).collect());
            if rng.gen_bool(0.4) {
                neg.push(atom);
            } else {
                pos.push(atom);
            }
        }
        rules.push(NormalRule { head, pos, neg });
    }
    let program = NormalProgram::with_predicates(rules, preds.iter().cloned()).ok()?;

    let mut data = DataSet::default();
    let universe_vals: Vec<Value> = consts.iter().map(|c| Value::from(*c)).collect();
    for input in program.input_predicates() {
        let arity = program.predicates[input];
        for t in crate::completion::tuples_over(arity, &universe_vals) {
            if rng.gen_bool(0.4) {
                data.insert(GroundAtom::new(input, t));
            }
        }
    }
    let universe = crate::completion::universe(&program, &data);
    if universe.is_empty() {
        return None;
    }
    if crate::completion::defined_base(&program, &universe).len() > max_defined_atoms {
        return None;
    }
    Some((program, data))
}
