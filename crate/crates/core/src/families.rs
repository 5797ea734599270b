//! Instance generators for the benchmark families, solution extraction,
//! and direct checkers that validate extracted solutions against the
//! original combinatorial constraint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ground::GroundTheory;
use crate::lang::{Bindings, LangError, Theory, Value};
use crate::propcore::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    VertexCover,
    VertexCoverCatom,
    NQueens,
    Pigeonhole,
    Schur,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::VertexCover,
        Family::VertexCoverCatom,
        Family::NQueens,
        Family::Pigeonhole,
        Family::Schur,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::VertexCover => "vertex-cover",
            Family::VertexCoverCatom => "vertex-cover-catom",
            Family::NQueens => "nqueens",
            Family::Pigeonhole => "pigeonhole",
            Family::Schur => "schur",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("extracted solution fails the direct check: {0}")]
    Check(String),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// An undirected simple graph on vertices `1..=n`, edges as `(u, v)` with
/// `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    /// `m` distinct edges drawn uniformly without replacement.
    pub fn random(n: usize, m: usize, seed: u64) -> Result<Graph, FamilyError> {
        let all: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        if m > all.len() {
            return Err(FamilyError::Parameters(format!(
                "{m} edges requested but a graph on {n} vertices has at most {}",
                all.len()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<(usize, usize)> = all.choose_multiple(&mut rng, m).copied().collect();
        edges.sort_unstable();
        Ok(Graph { n, edges })
    }

    pub fn is_cover(&self, cover: &BTreeSet<usize>) -> bool {
        self.edges
            .iter()
            .all(|(u, v)| cover.contains(u) || cover.contains(v))
    }
}

fn vertex(v: usize) -> String {
    format!("v{v}")
}

/// Generated data and program text, with any symbolic bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub family: Family,
    pub params: BTreeMap<&'static str, u64>,
    pub data: String,
    pub program: String,
    pub bindings: Bindings,
    pub graph: Option<Graph>,
}

impl Instance {
    pub fn theory(&self) -> Result<Theory, FamilyError> {
        Ok(Theory::parse(&[&self.data], &[&self.program], &self.bindings)?)
    }

    pub fn param(&self, name: &str) -> u64 {
        self.params[name]
    }

    /// A short label such as `schur n=44 k=4`.
    pub fn label(&self) -> String {
        let mut s = self.family.name().to_string();
        for (k, v) in &self.params {
            write!(s, " {k}={v}").unwrap();
        }
        s
    }
}

pub const VC_POSITIONAL: &str = "\
vpos(I,X) -> vtx(X).
vpos(I,X) -> pos(I).
vtx(X) -> vpos(_,X).
vpos(I,X), vpos(J,X) -> I = J.
vpos(I,X), vpos(I,Y) -> X = Y.
edge(X,Y), vpos(I,X), vpos(J,Y), size(K) -> I <= K ; J <= K.
";

pub const VC_CATOM: &str = "\
invc(X) -> vtx(X).
{invc(_)} k.
edge(X,Y) -> invc(X) ; invc(Y).
";

pub const NQUEENS: &str = "\
q(R,C) -> pos(R).
q(R,C) -> pos(C).
q(R,C1), q(R,C2) -> C1 = C2.
q(R1,C), q(R2,C) -> R1 = R2.
q(R,C), q(R + I,C + I) -> F.
q(R,C), q(R + I,C - I) -> F.
pos(R) -> q(R,_).
";

pub const PIGEONHOLE: &str = "\
in(P,H) -> pigeon(P).
in(P,H) -> hole(H).
pigeon(P) -> 1 {in(P,_)} 1.
hole(H) -> {in(_,H)} 1.
";

pub const SCHUR: &str = "\
bin(X,B) -> num(X).
bin(X,B) -> part(B).
num(X) -> 1 {bin(X,_)} 1.
part(B), bin(X,B), bin(Y,B), X <= Y, bin(X + Y,B) -> F.
";

fn graph_data(g: &Graph) -> String {
    let mut d = String::new();
    for v in 1..=g.n {
        writeln!(d, "vtx({}).", vertex(v)).unwrap();
    }
    for (u, v) in &g.edges {
        writeln!(d, "edge({},{}).", vertex(*u), vertex(*v)).unwrap();
    }
    d
}

/// Vertex cover with integer positions: the vertices labelled `1..=k`
/// form the cover.
pub fn vertex_cover(g: &Graph, k: usize) -> Instance {
    let mut data = graph_data(g);
    writeln!(data, "size({k}).").unwrap();
    for i in 1..=g.n {
        writeln!(data, "pos({i}).").unwrap();
    }
    Instance {
        family: Family::VertexCover,
        params: [("n", g.n as u64), ("m", g.edges.len() as u64), ("k", k as u64)].into(),
        data,
        program: VC_POSITIONAL.to_string(),
        bindings: Bindings::new(),
        graph: Some(g.clone()),
    }
}

/// Vertex cover with a cardinality bound on `invc`.
pub fn vertex_cover_catom(g: &Graph, k: usize) -> Instance {
    Instance {
        family: Family::VertexCoverCatom,
        params: [("n", g.n as u64), ("m", g.edges.len() as u64), ("k", k as u64)].into(),
        data: graph_data(g),
        program: VC_CATOM.to_string(),
        bindings: [("k".to_string(), k as i64)].into(),
        graph: Some(g.clone()),
    }
}

pub fn nqueens(n: usize) -> Result<Instance, FamilyError> {
    if n == 0 {
        return Err(FamilyError::Parameters("n must be positive".into()));
    }
    let mut data = String::new();
    for i in 1..=n {
        writeln!(data, "pos({i}).").unwrap();
    }
    Ok(Instance {
        family: Family::NQueens,
        params: [("n", n as u64)].into(),
        data,
        program: NQUEENS.to_string(),
        bindings: Bindings::new(),
        graph: None,
    })
}

pub fn pigeonhole(p: usize, h: usize) -> Result<Instance, FamilyError> {
    if p == 0 || h == 0 {
        return Err(FamilyError::Parameters("p and h must be positive".into()));
    }
    let mut data = String::new();
    for i in 1..=p {
        writeln!(data, "pigeon(p{i}).").unwrap();
    }
    for j in 1..=h {
        writeln!(data, "hole(h{j}).").unwrap();
    }
    Ok(Instance {
        family: Family::Pigeonhole,
        params: [("p", p as u64), ("h", h as u64)].into(),
        data,
        program: PIGEONHOLE.to_string(),
        bindings: Bindings::new(),
        graph: None,
    })
}

pub fn schur(n: usize, k: usize) -> Result<Instance, FamilyError> {
    if n == 0 || k == 0 {
        return Err(FamilyError::Parameters("n and k must be positive".into()));
    }
    let mut data = String::new();
    for i in 1..=n {
        writeln!(data, "num({i}).").unwrap();
    }
    for b in 1..=k {
        writeln!(data, "part(b{b}).").unwrap();
    }
    Ok(Instance {
        family: Family::Schur,
        params: [("n", n as u64), ("k", k as u64)].into(),
        data,
        program: SCHUR.to_string(),
        bindings: Bindings::new(),
        graph: None,
    })
}

/// A solution decoded from a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Cover(BTreeSet<usize>),
    Queens(Vec<(usize, usize)>),
    Holes(BTreeMap<usize, usize>),
    Bins(BTreeMap<usize, usize>),
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Cover(c) => {
                let vs: Vec<String> = c.iter().map(|v| vertex(*v)).collect();
                write!(f, "cover: {{{}}}", vs.join(", "))
            }
            Solution::Queens(qs) => {
                let n = qs.len();
                for r in 1..=n {
                    let row: String = (1..=n)
                        .map(|c| if qs.contains(&(r, c)) { 'Q' } else { '.' })
                        .collect();
                    writeln!(f, "{row}")?;
                }
                Ok(())
            }
            Solution::Holes(m) => {
                let xs: Vec<String> = m.iter().map(|(p, h)| format!("p{p}->h{h}")).collect();
                write!(f, "{}", xs.join(" "))
            }
            Solution::Bins(m) => {
                let mut bins: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for (x, b) in m {
                    bins.entry(*b).or_default().push(*x);
                }
                for (b, xs) in bins {
                    let xs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                    writeln!(f, "b{b}: {}", xs.join(" "))?;
                }
                Ok(())
            }
        }
    }
}

/// True atoms of predicate `pred` as argument vectors.
fn true_args<'a>(gt: &'a GroundTheory, m: &'a Model, pred: &'a str) -> impl Iterator<Item = &'a [Value]> + 'a {
    m.true_atoms()
        .map(|id| gt.atoms.atom(id))
        .filter(move |a| a.predicate == pred)
        .map(|a| a.args.as_slice())
}

fn int_arg(v: &Value) -> Option<usize> {
    v.as_int().and_then(|i| usize::try_from(i).ok())
}

fn prefixed(v: &Value, prefix: char) -> Option<usize> {
    match v {
        Value::Sym(s) => s.strip_prefix(prefix)?.parse().ok(),
        Value::Int(_) => None,
    }
}

fn bad(msg: String) -> FamilyError {
    FamilyError::Check(msg)
}

/// Decodes a model and validates it with the family's direct checker.
pub fn extract_solution(inst: &Instance, gt: &GroundTheory, m: &Model) -> Result<Solution, FamilyError> {
    let sol = match inst.family {
        Family::VertexCover => {
            let k = inst.param("k") as usize;
            let mut cover = BTreeSet::new();
            for args in true_args(gt, m, "vpos") {
                if let (Some(i), Some(x)) = (int_arg(&args[0]), prefixed(&args[1], 'v')) {
                    if i <= k {
                        cover.insert(x);
                    }
                }
            }
            Solution::Cover(cover)
        }
        Family::VertexCoverCatom => Solution::Cover(
            true_args(gt, m, "invc")
                .filter_map(|a| prefixed(&a[0], 'v'))
                .collect(),
        ),
        Family::NQueens => Solution::Queens(
            true_args(gt, m, "q")
                .filter_map(|a| Some((int_arg(&a[0])?, int_arg(&a[1])?)))
                .collect(),
        ),
        Family::Pigeonhole => {
            let mut holes = BTreeMap::new();
            for a in true_args(gt, m, "in") {
                let (Some(p), Some(h)) = (prefixed(&a[0], 'p'), prefixed(&a[1], 'h')) else {
                    return Err(bad(format!("unexpected atom in({},{})", a[0], a[1])));
                };
                if holes.insert(p, h).is_some() {
                    return Err(bad(format!("pigeon p{p} is in two holes")));
                }
            }
            Solution::Holes(holes)
        }
        Family::Schur => {
            let mut bins = BTreeMap::new();
            for a in true_args(gt, m, "bin") {
                let (Some(x), Some(b)) = (int_arg(&a[0]), prefixed(&a[1], 'b')) else {
                    return Err(bad(format!("unexpected atom bin({},{})", a[0], a[1])));
                };
                if bins.insert(x, b).is_some() {
                    return Err(bad(format!("{x} is in two bins")));
                }
            }
            Solution::Bins(bins)
        }
    };
    check_solution(inst, &sol)?;
    Ok(sol)
}

/// Checks a solution against the combinatorial problem itself.
pub fn check_solution(inst: &Instance, sol: &Solution) -> Result<(), FamilyError> {
    match (inst.family, sol) {
        (Family::VertexCover | Family::VertexCoverCatom, Solution::Cover(c)) => {
            let g = inst.graph.as_ref().expect("vertex cover instances carry their graph");
            let k = inst.param("k") as usize;
            if c.len() > k {
                return Err(bad(format!("cover has {} vertices, bound is {k}", c.len())));
            }
            if let Some((u, v)) = g.edges.iter().find(|(u, v)| !c.contains(u) && !c.contains(v)) {
                return Err(bad(format!("edge ({u},{v}) is uncovered")));
            }
            if c.iter().any(|v| *v == 0 || *v > g.n) {
                return Err(bad("cover mentions a non-vertex".into()));
            }
        }
        (Family::NQueens, Solution::Queens(qs)) => {
            let n = inst.param("n") as usize;
            if qs.len() != n {
                return Err(bad(format!("{} queens on an {n}x{n} board", qs.len())));
            }
            for (i, &(r1, c1)) in qs.iter().enumerate() {
                if !(1..=n).contains(&r1) || !(1..=n).contains(&c1) {
                    return Err(bad(format!("queen ({r1},{c1}) off the board")));
                }
                for &(r2, c2) in &qs[i + 1..] {
                    if r1 == r2 || c1 == c2 || r1.abs_diff(r2) == c1.abs_diff(c2) {
                        return Err(bad(format!("queens ({r1},{c1}) and ({r2},{c2}) attack")));
                    }
                }
            }
        }
        (Family::Pigeonhole, Solution::Holes(m)) => {
            let (p, h) = (inst.param("p") as usize, inst.param("h") as usize);
            if (1..=p).any(|i| !m.contains_key(&i)) || m.len() != p {
                return Err(bad("not every pigeon has a hole".into()));
            }
            let used: BTreeSet<usize> = m.values().copied().collect();
            if used.len() != p || used.iter().any(|j| *j == 0 || *j > h) {
                return Err(bad("holes are shared or out of range".into()));
            }
        }
        (Family::Schur, Solution::Bins(bins)) => {
            let (n, k) = (inst.param("n") as usize, inst.param("k") as usize);
            if (1..=n).any(|x| !bins.contains_key(&x)) || bins.len() != n {
                return Err(bad("not every number has a bin".into()));
            }
            if bins.values().any(|b| *b == 0 || *b > k) {
                return Err(bad("bin out of range".into()));
            }
            for x in 1..=n {
                for y in x..=n - x {
                    if bins[&x] == bins[&y] && bins[&y] == bins[&(x + y)] {
                        return Err(bad(format!("{x} + {y} = {} in one bin", x + y)));
                    }
                }
            }
        }
        _ => return Err(bad("solution kind does not match the family".into())),
    }
    Ok(())
}
