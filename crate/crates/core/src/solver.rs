//! Davis-Putnam style search over ground theories with native propagation
//! of cardinality atoms.
//!
//! Each distinct c-atom keeps two counters: `lo`, the number of its atoms
//! assigned true, and `hi`, `lo` plus the number still unassigned. A clause
//! is rechecked whenever a counter of one of its c-atoms moves.

use std::collections::{HashMap, VecDeque};

use crate::ground::{GroundCAtom, GroundTheory};
use crate::propcore::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    One,
    All,
    Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    FixedTrue,
    FixedFalse,
    Open,
}

/// Status of `m{S}n` given `lo` true atoms and at most `hi` true atoms.
pub fn catom_status(m: u32, n: u32, lo: u32, hi: u32) -> Status {
    if hi < m || lo > n || m > n {
        Status::FixedFalse
    } else if lo >= m && hi <= n {
        Status::FixedTrue
    } else {
        Status::Open
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    /// Models found, in discovery order. Empty in count mode.
    pub models: Vec<Model>,
    pub count: u64,
    pub stats: Stats,
}

impl Outcome {
    pub fn is_sat(&self) -> bool {
        self.count > 0
    }
}

/// Three-valued atom state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Unknown,
    False,
    True,
}

#[derive(Debug, Clone)]
struct CAtom {
    lower: u32,
    upper: u32,
    atoms: Vec<u32>,
}

#[derive(Debug, Clone)]
struct Clause {
    antecedent: Vec<u32>,
    consequent: Vec<u32>,
}

#[derive(Debug, Clone, Copy)]
struct Decision {
    trail_start: usize,
    atom: u32,
    value: bool,
    flipped: bool,
    #[cfg(debug_assertions)]
    hash: u64,
}

fn zobrist(atom: u32, value: bool) -> u64 {
    let mut z = (atom as u64) << 1 | value as u64;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Search state for one ground theory.
pub struct Solver {
    catoms: Vec<CAtom>,
    clauses: Vec<Clause>,
    atom_catoms: Vec<Vec<u32>>,
    catom_clauses: Vec<Vec<u32>>,
    lo: Vec<u32>,
    hi: Vec<u32>,
    value: Vec<Value>,
    trail: Vec<u32>,
    decisions: Vec<Decision>,
    queue: VecDeque<u32>,
    queued: Vec<bool>,
    hash: u64,
    stats: Stats,
    score: Vec<f64>,
    cons_occ: Vec<u32>,
    ante_occ: Vec<u32>,
    /// Clauses not satisfied at level 0; the others never matter again.
    active: Vec<u32>,
    /// Atoms unassigned after level 0, ascending.
    free: Vec<u32>,
    /// Per c-atom, its members among `free`.
    live: Vec<Vec<u32>>,
}

impl Solver {
    pub fn new(gt: &GroundTheory) -> Self {
        let num_atoms = gt.atom_count();
        let mut catoms: Vec<CAtom> = Vec::new();
        let mut index: HashMap<&GroundCAtom, u32> = HashMap::new();
        let mut clauses = Vec::with_capacity(gt.clauses.len());
        for cl in &gt.clauses {
            let mut antecedent = Vec::with_capacity(cl.antecedent.len());
            let mut consequent = Vec::with_capacity(cl.consequent.len());
            for (c, out) in cl
                .antecedent
                .iter()
                .map(|c| (c, 0))
                .chain(cl.consequent.iter().map(|c| (c, 1)))
            {
                let id = *index.entry(c).or_insert_with(|| {
                    let mut atoms: Vec<u32> = Vec::with_capacity(c.atoms.len());
                    for a in &c.atoms {
                        if !atoms.contains(&a.0) {
                            atoms.push(a.0);
                        }
                    }
                    let k = atoms.len() as u32;
                    catoms.push(CAtom {
                        lower: c.min(),
                        upper: c.upper.map_or(k, |n| n.min(k)),
                        atoms,
                    });
                    catoms.len() as u32 - 1
                });
                if out == 0 {
                    antecedent.push(id);
                } else {
                    consequent.push(id);
                }
            }
            clauses.push(Clause {
                antecedent,
                consequent,
            });
        }

        let mut atom_catoms = vec![Vec::new(); num_atoms];
        for (i, c) in catoms.iter().enumerate() {
            for &a in &c.atoms {
                atom_catoms[a as usize].push(i as u32);
            }
        }
        let mut catom_clauses = vec![Vec::new(); catoms.len()];
        for (i, cl) in clauses.iter().enumerate() {
            for &c in cl.antecedent.iter().chain(&cl.consequent) {
                let list: &mut Vec<u32> = &mut catom_clauses[c as usize];
                if list.last() != Some(&(i as u32)) {
                    list.push(i as u32);
                }
            }
        }
        let lo = vec![0; catoms.len()];
        let hi = catoms.iter().map(|c| c.atoms.len() as u32).collect();
        Solver {
            queued: vec![false; clauses.len()],
            catoms,
            clauses,
            atom_catoms,
            catom_clauses,
            lo,
            hi,
            value: vec![Value::Unknown; num_atoms],
            trail: Vec::new(),
            decisions: Vec::new(),
            queue: VecDeque::new(),
            hash: 0,
            stats: Stats::default(),
            score: vec![0.0; num_atoms],
            cons_occ: vec![0; num_atoms],
            ante_occ: vec![0; num_atoms],
            active: Vec::new(),
            free: Vec::new(),
            live: Vec::new(),
        }
    }

    pub fn value(&self, atom: usize) -> Value {
        self.value[atom]
    }

    pub fn trail_len(&self) -> usize {
        self.trail.len()
    }

    pub fn level(&self) -> usize {
        self.decisions.len()
    }

    fn status(&self, c: u32) -> Status {
        let ca = &self.catoms[c as usize];
        catom_status(ca.lower, ca.upper, self.lo[c as usize], self.hi[c as usize])
    }

    fn enqueue(&mut self, cl: u32) {
        if !self.queued[cl as usize] {
            self.queued[cl as usize] = true;
            self.queue.push_back(cl);
        }
    }

    fn clear_queue(&mut self) {
        for cl in self.queue.drain(..) {
            self.queued[cl as usize] = false;
        }
    }

    /// Assigns an unassigned atom and schedules the clauses it touches.
    pub fn assign(&mut self, atom: u32, v: bool) {
        debug_assert_eq!(self.value[atom as usize], Value::Unknown);
        self.value[atom as usize] = if v { Value::True } else { Value::False };
        self.trail.push(atom);
        self.hash ^= zobrist(atom, v);
        for i in 0..self.atom_catoms[atom as usize].len() {
            let c = self.atom_catoms[atom as usize][i] as usize;
            if v {
                self.lo[c] += 1;
            } else {
                self.hi[c] -= 1;
            }
            for j in 0..self.catom_clauses[c].len() {
                let cl = self.catom_clauses[c][j];
                self.enqueue(cl);
            }
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let atom = self.trail.pop().unwrap();
            let v = self.value[atom as usize] == Value::True;
            self.hash ^= zobrist(atom, v);
            for &c in &self.atom_catoms[atom as usize] {
                if v {
                    self.lo[c as usize] -= 1;
                } else {
                    self.hi[c as usize] += 1;
                }
            }
            self.value[atom as usize] = Value::Unknown;
        }
    }

    fn set_unknowns(&mut self, c: u32, v: bool) {
        for i in 0..self.catoms[c as usize].atoms.len() {
            let a = self.catoms[c as usize].atoms[i];
            if self.value[a as usize] == Value::Unknown {
                self.stats.propagations += 1;
                self.assign(a, v);
            }
        }
    }

    /// Makes `c` true (`want`) or false where a counter margin is tight;
    /// otherwise the obligation is picked up again when a counter moves.
    fn force(&mut self, c: u32, want: bool) {
        let ca = &self.catoms[c as usize];
        let (m, n) = (ca.lower, ca.upper);
        let (lo, hi) = (self.lo[c as usize], self.hi[c as usize]);
        if want {
            if lo == n {
                self.set_unknowns(c, false);
            } else if hi == m {
                self.set_unknowns(c, true);
            }
        } else if lo >= m {
            if hi == n + 1 {
                self.set_unknowns(c, true);
            }
        } else if hi <= n && lo + 1 == m {
            self.set_unknowns(c, false);
        }
    }

    /// Checks one clause; `false` on conflict.
    fn check_clause(&mut self, cl: u32) -> bool {
        let mut open = None;
        let mut n_open = 0;
        let clause = &self.clauses[cl as usize];
        for &c in &clause.antecedent {
            match self.status(c) {
                Status::FixedFalse => return true,
                Status::FixedTrue => {}
                Status::Open => {
                    n_open += 1;
                    open = Some((c, false));
                }
            }
        }
        for &c in &clause.consequent {
            match self.status(c) {
                Status::FixedTrue => return true,
                Status::FixedFalse => {}
                Status::Open => {
                    n_open += 1;
                    open = Some((c, true));
                }
            }
        }
        match (n_open, open) {
            (0, _) => false,
            (1, Some((c, want))) => {
                self.force(c, want);
                true
            }
            _ => true,
        }
    }

    fn satisfied(&self, cl: u32) -> bool {
        let clause = &self.clauses[cl as usize];
        clause.antecedent.iter().any(|&c| self.status(c) == Status::FixedFalse)
            || clause.consequent.iter().any(|&c| self.status(c) == Status::FixedTrue)
    }

    /// Unit propagation to fixpoint; `false` on conflict.
    pub fn propagate(&mut self) -> bool {
        while let Some(cl) = self.queue.pop_front() {
            self.queued[cl as usize] = false;
            if !self.check_clause(cl) {
                self.clear_queue();
                self.stats.conflicts += 1;
                return false;
            }
        }
        true
    }

    /// Schedules every clause, as done once before the search starts.
    pub fn schedule_all(&mut self) {
        for cl in 0..self.clauses.len() as u32 {
            self.enqueue(cl);
        }
    }

    /// The branching atom and the value to try first, or `None` when every
    /// atom is assigned.
    fn pick_branch(&mut self) -> Option<(u32, bool)> {
        for &a in &self.free {
            self.score[a as usize] = 0.0;
            self.cons_occ[a as usize] = 0;
            self.ante_occ[a as usize] = 0;
        }
        let mut open: Vec<(u32, bool)> = Vec::new();
        'clauses: for &i in &self.active {
            let cl = &self.clauses[i as usize];
            open.clear();
            for &c in &cl.antecedent {
                match self.status(c) {
                    Status::FixedFalse => continue 'clauses,
                    Status::FixedTrue => {}
                    Status::Open => open.push((c, false)),
                }
            }
            for &c in &cl.consequent {
                match self.status(c) {
                    Status::FixedTrue => continue 'clauses,
                    Status::FixedFalse => {}
                    Status::Open => open.push((c, true)),
                }
            }
            let w = 0.5f64.powi(open.len() as i32);
            for &(c, cons) in &open {
                for &a in &self.live[c as usize] {
                    if self.value[a as usize] == Value::Unknown {
                        self.score[a as usize] += w;
                        if cons {
                            self.cons_occ[a as usize] += 1;
                        } else {
                            self.ante_occ[a as usize] += 1;
                        }
                    }
                }
            }
        }
        let mut best: Option<usize> = None;
        for &a in &self.free {
            let a = a as usize;
            if self.value[a] != Value::Unknown {
                continue;
            }
            match best {
                Some(b) if self.score[a] <= self.score[b] => {}
                _ => best = Some(a),
            }
        }
        best.map(|a| (a as u32, self.cons_occ[a] > self.ante_occ[a]))
    }

    fn decide(&mut self, atom: u32, value: bool, flipped: bool) {
        self.decisions.push(Decision {
            trail_start: self.trail.len(),
            atom,
            value,
            flipped,
            #[cfg(debug_assertions)]
            hash: self.hash,
        });
        self.assign(atom, value);
    }

    /// Chronological backtracking: undo to the most recent unflipped
    /// decision and take its other branch. `false` when none is left.
    fn backtrack(&mut self) -> bool {
        while let Some(d) = self.decisions.pop() {
            self.undo_to(d.trail_start);
            #[cfg(debug_assertions)]
            assert_eq!(self.hash, d.hash, "trail did not restore the assignment");
            if !d.flipped {
                self.decide(d.atom, !d.value, true);
                return true;
            }
        }
        false
    }

    fn model(&self) -> Model {
        Model(self.value.iter().map(|v| *v == Value::True).collect())
    }

    /// Runs the search, calling `on_model` for each model until it returns
    /// `false` or the space is exhausted.
    pub fn search(&mut self, mut on_model: impl FnMut(Model) -> bool) -> Stats {
        self.schedule_all();
        if self.propagate() {
            self.active = (0..self.clauses.len() as u32)
                .filter(|&i| !self.satisfied(i))
                .collect();
            self.free = (0..self.value.len() as u32)
                .filter(|&a| self.value[a as usize] == Value::Unknown)
                .collect();
            self.live = self
                .catoms
                .iter()
                .map(|c| {
                    c.atoms
                        .iter()
                        .copied()
                        .filter(|&a| self.value[a as usize] == Value::Unknown)
                        .collect()
                })
                .collect();
        } else {
            return self.stats;
        }
        loop {
            if !self.propagate() {
                if !self.backtrack() {
                    break;
                }
                continue;
            }
            match self.pick_branch() {
                Some((atom, v)) => {
                    self.stats.decisions += 1;
                    self.decide(atom, v, false);
                }
                None => {
                    if !on_model(self.model()) || !self.backtrack() {
                        break;
                    }
                }
            }
        }
        self.stats
    }
}

pub fn solve(gt: &GroundTheory, mode: Mode) -> Outcome {
    let mut out = Outcome::default();
    let mut solver = Solver::new(gt);
    out.stats = solver.search(|m| {
        debug_assert!(crate::propcore::check_model(gt, &m), "solver emitted a non-model");
        out.count += 1;
        if mode != Mode::Count {
            out.models.push(m);
        }
        mode != Mode::One
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{AtomTable, GroundAtomId, GroundClause};
    use crate::lang::GroundAtom;

    fn theory(n: usize, clauses: Vec<GroundClause>) -> GroundTheory {
        let mut atoms = AtomTable::default();
        for i in 0..n {
            atoms.intern(GroundAtom::new(format!("x{i}"), vec![]));
        }
        GroundTheory {
            atoms,
            clauses,
            data: vec![],
        }
    }

    fn ids(xs: &[u32]) -> Vec<GroundAtomId> {
        xs.iter().map(|&i| GroundAtomId(i)).collect()
    }

    #[test]
    fn status_examples() {
        assert_eq!(catom_status(1, 1, 1, 1), Status::FixedTrue);
        assert_eq!(catom_status(0, 1, 2, 3), Status::FixedFalse);
        assert_eq!(catom_status(2, 2, 1, 3), Status::Open);
        assert_eq!(catom_status(3, 2, 0, 3), Status::FixedFalse);
    }

    #[test]
    fn level_zero_conflict() {
        let p = GroundCAtom::atom(GroundAtomId(0));
        let gt = theory(
            1,
            vec![GroundClause::new(vec![], vec![p.clone()]), GroundClause::new(vec![p], vec![])],
        );
        let mut s = Solver::new(&gt);
        s.schedule_all();
        assert!(!s.propagate());
        assert_eq!(s.level(), 0);
        assert!(!solve(&gt, Mode::One).is_sat());
    }

    #[test]
    fn upper_margin_forces_false() {
        let gt = theory(3, vec![GroundClause::new(vec![], vec![GroundCAtom::new(None, ids(&[0, 1, 2]), Some(1))])]);
        let mut s = Solver::new(&gt);
        s.schedule_all();
        assert!(s.propagate());
        s.assign(0, true);
        assert!(s.propagate());
        assert_eq!(s.value(1), Value::False);
        assert_eq!(s.value(2), Value::False);
    }

    #[test]
    fn lower_margin_forces_true() {
        let gt = theory(3, vec![GroundClause::new(vec![], vec![GroundCAtom::new(Some(2), ids(&[0, 1, 2]), Some(2))])]);
        let mut s = Solver::new(&gt);
        s.schedule_all();
        assert!(s.propagate());
        assert_eq!(s.trail_len(), 0);
        s.assign(2, false);
        assert!(s.propagate());
        assert_eq!(s.value(0), Value::True);
        assert_eq!(s.value(1), Value::True);
    }

    #[test]
    fn forcing_false_through_antecedents() {
        // 1{x0,x1,x2}1 -> F with x0 true: the count must exceed 1 or drop to 0
        let c = GroundCAtom::new(Some(1), ids(&[0, 1, 2]), Some(1));
        let gt = theory(3, vec![GroundClause::new(vec![c], vec![])]);
        let mut s = Solver::new(&gt);
        s.schedule_all();
        assert!(s.propagate());
        s.assign(0, true);
        s.assign(1, false);
        assert!(s.propagate());
        assert_eq!(s.value(2), Value::True);
        let out = solve(&gt, Mode::All);
        assert_eq!(out.count, 8 - 3);
    }

    #[test]
    fn count_and_all_agree() {
        let gt = theory(4, vec![GroundClause::new(vec![], vec![GroundCAtom::new(Some(1), ids(&[0, 1, 2, 3]), Some(2))])]);
        let all = solve(&gt, Mode::All);
        let count = solve(&gt, Mode::Count);
        assert_eq!(all.count, 4 + 6);
        assert_eq!(count.count, all.count);
        assert!(count.models.is_empty());
        assert_eq!(solve(&gt, Mode::One).models.len(), 1);
    }

    #[test]
    fn free_atoms_are_enumerated() {
        let gt = theory(3, vec![]);
        assert_eq!(solve(&gt, Mode::Count).count, 8);
        let empty = theory(0, vec![]);
        assert_eq!(solve(&empty, Mode::All).models, vec![Model(vec![])]);
    }
}
