//! Line-based problem files.
//!
//! ```text
//! # indicator of the box [-1, 1]^2
//! dim 2
//! constraints 4
//! 1 0 1
//! -1 0 1
//! 0 1 1
//! 0 -1 1
//! ```
//!
//! Directives: `dim <n>` (first), `pieces <k>` followed by `k` lines
//! `c₁ … cₙ d`, `constraints <m>` followed by `m` lines `a₁ … aₙ b`,
//! `rho <r>` with `r > 0`, and `vertices <k>` followed by `k` lines of `n`
//! tokens. `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, RatVector, Rational};
use crate::geometry::{HPolyhedron, VPolytope};
use crate::prox::LowerC2Instance;
use crate::subdiff::{AffinePiece, PolyhedralFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub dim: usize,
    pub pieces: Option<Vec<AffinePiece>>,
    pub constraints: Option<Vec<(RatVector, Rational)>>,
    pub rho: Option<Rational>,
    pub vertices: Option<Vec<RatVector>>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first_line, first) = lines.next().ok_or_else(|| perr(1, "empty problem file"))?;
    let dim = match first.split_whitespace().collect::<Vec<_>>()[..] {
        ["dim", n] => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| perr(first_line, format!("dim must be a positive integer, got {n:?}")))?,
        _ => return Err(perr(first_line, "first directive must be `dim <n>`")),
    };

    let mut file = ProblemFile {
        dim,
        pieces: None,
        constraints: None,
        rho: None,
        vertices: None,
    };
    let mut constraints_line = first_line;

    while let Some((line, content)) = lines.next() {
        let words: Vec<&str> = content.split_whitespace().collect();
        let count = |arg: Option<&&str>| -> Result<usize> {
            arg.and_then(|s| s.parse().ok())
                .ok_or_else(|| perr(line, format!("`{}` needs a nonnegative count", words[0])))
        };
        let mut read_rows = |k: usize, width: usize| -> Result<Vec<RatVector>> {
            (0..k)
                .map(|_| {
                    let (l, row) = lines
                        .next()
                        .ok_or_else(|| perr(line, format!("expected {k} rows after `{}`", words[0])))?;
                    let toks: Vec<&str> = row.split_whitespace().collect();
                    if toks.len() != width {
                        return Err(perr(l, format!("expected {width} tokens, found {}", toks.len())));
                    }
                    toks.iter()
                        .map(|t| parse_rational(t).map_err(|e| perr(l, e.to_string())))
                        .collect()
                })
                .collect()
        };
        if words.len() != 2 {
            return Err(perr(line, format!("malformed directive {content:?}")));
        }
        match words[0] {
            "dim" => return Err(perr(line, "duplicate `dim`")),
            "pieces" => {
                if file.pieces.is_some() {
                    return Err(perr(line, "duplicate `pieces` section"));
                }
                let k = count(words.get(1))?;
                let rows = read_rows(k, dim + 1)?;
                file.pieces = Some(
                    rows.into_iter()
                        .map(|r| {
                            let mut r = r.into_inner();
                            let d = r.pop().expect("width ≥ 2");
                            AffinePiece::new(r.into(), d)
                        })
                        .collect(),
                );
            }
            "constraints" => {
                if file.constraints.is_some() {
                    return Err(perr(line, "duplicate `constraints` section"));
                }
                constraints_line = line;
                let m = count(words.get(1))?;
                let rows = read_rows(m, dim + 1)?;
                file.constraints = Some(
                    rows.into_iter()
                        .map(|r| {
                            let mut r = r.into_inner();
                            let b = r.pop().expect("width ≥ 2");
                            (r.into(), b)
                        })
                        .collect(),
                );
            }
            "vertices" => {
                if file.vertices.is_some() {
                    return Err(perr(line, "duplicate `vertices` section"));
                }
                let k = count(words.get(1))?;
                file.vertices = Some(read_rows(k, dim)?);
            }
            "rho" => {
                if file.rho.is_some() {
                    return Err(perr(line, "duplicate `rho`"));
                }
                let rho = parse_rational(words[1]).map_err(|e| perr(line, e.to_string()))?;
                if !rho.is_positive() {
                    return Err(perr(line, format!("rho must be positive, got {rho}")));
                }
                file.rho = Some(rho);
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }

    if file.vertices.is_none() {
        if file.pieces.is_none() && file.constraints.is_none() {
            return Err(perr(first_line, "improper function: neither pieces nor constraints given"));
        }
        if !file.function()?.is_proper() {
            return Err(perr(constraints_line, "improper function: the constraints have no common solution"));
        }
    } else if file.vertices.as_ref().is_some_and(Vec::is_empty) {
        return Err(perr(first_line, "`vertices` section is empty"));
    }
    Ok(file)
}

impl ProblemFile {
    pub fn function(&self) -> Result<PolyhedralFunction> {
        let domain = match &self.constraints {
            Some(rows) => HPolyhedron::from_rows(rows.clone(), self.dim)?,
            None => HPolyhedron::whole_space(self.dim),
        };
        PolyhedralFunction::new(self.dim, self.pieces.clone().unwrap_or_default(), domain)
    }

    /// The lower-C² instance `g - (ρ/2)|·|²` when `rho` is present.
    pub fn lower_c2(&self) -> Option<Result<LowerC2Instance>> {
        let rho = self.rho.clone()?;
        Some(self.function().and_then(|g| LowerC2Instance::new(g, rho)))
    }

    pub fn polytope(&self) -> Result<VPolytope> {
        VPolytope::new(self.vertices.clone().unwrap_or_default())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let row = |v: &[Rational], last: Option<&Rational>| {
            v.iter()
                .chain(last)
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(out, "dim {}", self.dim).unwrap();
        if let Some(pieces) = &self.pieces {
            writeln!(out, "pieces {}", pieces.len()).unwrap();
            for p in pieces {
                writeln!(out, "{}", row(&p.slope, Some(&p.offset))).unwrap();
            }
        }
        if let Some(cons) = &self.constraints {
            writeln!(out, "constraints {}", cons.len()).unwrap();
            for (a, b) in cons {
                writeln!(out, "{}", row(a, Some(b))).unwrap();
            }
        }
        if let Some(rho) = &self.rho {
            writeln!(out, "rho {rho}").unwrap();
        }
        if let Some(vs) = &self.vertices {
            writeln!(out, "vertices {}", vs.len()).unwrap();
            for v in vs {
                writeln!(out, "{}", row(v, None)).unwrap();
            }
        }
        out
    }
}
