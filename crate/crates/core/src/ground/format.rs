//! Line-oriented text form of a ground theory.
//!
//! ```text
//! p gnd <#atoms> <#clauses>
//! a <id> <atom>                  one per atom, ids 0-based
//! d <atom>                       data atoms the theory was grounded against
//! c <m|*> <n|*> <k> <id>...      c-atom table, indexed by order of appearance
//! r <s> <t> <c-idx>...           s antecedent then t consequent c-atoms
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{parse_ground_atom, AtomTable, GroundAtomId, GroundCAtom, GroundClause, GroundTheory};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing `p gnd` header")]
    MissingHeader,
    #[error("header declares {declared} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
}

pub fn write_ground(g: &GroundTheory) -> String {
    let mut table: Vec<&GroundCAtom> = Vec::new();
    let mut index: HashMap<&GroundCAtom, usize> = HashMap::new();
    for cl in &g.clauses {
        for c in cl.antecedent.iter().chain(&cl.consequent) {
            index.entry(c).or_insert_with(|| {
                table.push(c);
                table.len() - 1
            });
        }
    }

    let mut out = String::new();
    writeln!(out, "p gnd {} {}", g.atoms.len(), g.clauses.len()).unwrap();
    for (id, a) in g.atoms.iter() {
        writeln!(out, "a {id} {a}").unwrap();
    }
    for a in &g.data {
        writeln!(out, "d {a}").unwrap();
    }
    let bound = |b: Option<u32>| b.map_or("*".to_string(), |v| v.to_string());
    for c in &table {
        write!(out, "c {} {} {}", bound(c.lower), bound(c.upper), c.atoms.len()).unwrap();
        for id in &c.atoms {
            write!(out, " {id}").unwrap();
        }
        out.push('\n');
    }
    for cl in &g.clauses {
        write!(out, "r {} {}", cl.antecedent.len(), cl.consequent.len()).unwrap();
        for c in cl.antecedent.iter().chain(&cl.consequent) {
            write!(out, " {}", index[c]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_ground(text: &str) -> Result<GroundTheory, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut atoms = AtomTable::default();
    let mut data = Vec::new();
    let mut catoms: Vec<GroundCAtom> = Vec::new();
    let mut clauses = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let bad = |msg: &str| FormatError::Malformed {
            line,
            msg: msg.to_string(),
        };
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let (tag, rest) = raw.split_once(' ').unwrap_or((raw, ""));
        let nums = |s: &str| -> Result<Vec<usize>, FormatError> {
            s.split_whitespace()
                .map(|w| w.parse::<usize>().map_err(|_| bad(&format!("expected a number, found `{w}`"))))
                .collect()
        };
        if header.is_none() && tag != "p" {
            return Err(FormatError::MissingHeader);
        }
        match tag {
            "p" => {
                let mut w = rest.split_whitespace();
                if w.next() != Some("gnd") || header.is_some() {
                    return Err(bad("expected a single `p gnd` header"));
                }
                let v = nums(&w.collect::<Vec<_>>().join(" "))?;
                let [n, m] = v[..] else {
                    return Err(bad("header needs atom and clause counts"));
                };
                header = Some((n, m));
            }
            "a" => {
                let (id, name) = rest.split_once(' ').ok_or_else(|| bad("expected `a <id> <atom>`"))?;
                let id: usize = id.parse().map_err(|_| bad("bad atom id"))?;
                let atom = parse_ground_atom(name).ok_or_else(|| bad("bad atom"))?;
                if id != atoms.len() {
                    return Err(bad("atom ids must be consecutive from 0"));
                }
                if atoms.get(&atom).is_some() {
                    return Err(bad("duplicate atom"));
                }
                atoms.intern(atom);
            }
            "d" => data.push(parse_ground_atom(rest).ok_or_else(|| bad("bad atom"))?),
            "c" => {
                let w: Vec<&str> = rest.split_whitespace().collect();
                if w.len() < 3 {
                    return Err(bad("expected `c <m> <n> <k> <ids>`"));
                }
                let bound = |s: &str| -> Result<Option<u32>, FormatError> {
                    if s == "*" {
                        Ok(None)
                    } else {
                        s.parse().map(Some).map_err(|_| bad("bad bound"))
                    }
                };
                let (lower, upper) = (bound(w[0])?, bound(w[1])?);
                let k: usize = w[2].parse().map_err(|_| bad("bad member count"))?;
                let ids = nums(&w[3..].join(" "))?;
                if ids.len() != k {
                    return Err(bad("member count does not match"));
                }
                let mut members = Vec::with_capacity(k);
                for id in ids {
                    if id >= atoms.len() {
                        return Err(bad(&format!("unknown atom id {id}")));
                    }
                    members.push(GroundAtomId(id as u32));
                }
                catoms.push(GroundCAtom::new(lower, members, upper));
            }
            "r" => {
                let v = nums(rest)?;
                if v.len() < 2 || v.len() != 2 + v[0] + v[1] {
                    return Err(bad("expected `r <s> <t>` followed by s+t indices"));
                }
                let pick = |i: usize| -> Result<GroundCAtom, FormatError> {
                    catoms
                        .get(i)
                        .cloned()
                        .ok_or_else(|| bad(&format!("unknown c-atom index {i}")))
                };
                let antecedent = v[2..2 + v[0]].iter().map(|&i| pick(i)).collect::<Result<_, _>>()?;
                let consequent = v[2 + v[0]..].iter().map(|&i| pick(i)).collect::<Result<_, _>>()?;
                clauses.push(GroundClause::new(antecedent, consequent));
            }
            other => return Err(bad(&format!("unknown line tag `{other}`"))),
        }
    }

    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if n != atoms.len() {
        return Err(FormatError::CountMismatch {
            what: "atoms",
            declared: n,
            found: atoms.len(),
        });
    }
    if m != clauses.len() {
        return Err(FormatError::CountMismatch {
            what: "clauses",
            declared: m,
            found: clauses.len(),
        });
    }
    Ok(GroundTheory {
        atoms,
        clauses,
        data,
    })
}
