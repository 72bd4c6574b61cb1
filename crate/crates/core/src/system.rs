//! Coxeter systems: the bond matrix, its text format, and named presets.
//!
//! A system of rank n is the symmetric matrix (m_st) with m_ss = 1 and
//! off-diagonal entries in {2, 3, …} ∪ {∞}.  The text format is
//! line-oriented (`;` also separates statements, `#` starts a comment):
//!
//! ```text
//! rank 3
//! m 1 2 = 6
//! m 2 3 = 3        # unspecified pairs default to 2
//! ```
//!
//! Preset names (`A2`, `B2`, `G2`, `H3`, `I2(7)`, `I2(inf)`, `Atilde2`,
//! `Ctilde2`, `Gtilde2`, `triangle(p,q,r)`, …) expand to fixed matrices.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An off-diagonal Coxeter matrix entry.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid system: {0}")]
    Invalid(String),
}

/// A Coxeter system: rank and bond matrix.  Generators are numbered from 0
/// internally and displayed as `s1 … sN`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterSystem {
    rank: usize,
    /// Upper-triangular by (i, j), i < j, row-major.
    bonds: Vec<Bond>,
}

impl CoxeterSystem {
    pub fn new(rank: usize, pairs: &[(usize, usize, Bond)]) -> Result<Self, SystemError> {
        if rank == 0 || rank > 64 {
            return Err(SystemError::Invalid(format!(
                "rank must be between 1 and 64, got {rank}"
            )));
        }
        let mut bonds = vec![Bond::Finite(2); rank * (rank - 1) / 2];
        for &(i, j, m) in pairs {
            if i >= rank || j >= rank || i == j {
                return Err(SystemError::Invalid(format!(
                    "bond ({}, {}) out of range for rank {rank}",
                    i + 1,
                    j + 1
                )));
            }
            if let Bond::Finite(v) = m {
                if v < 2 {
                    return Err(SystemError::Invalid(format!(
                        "bond m({}, {}) must be at least 2, got {v}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            bonds[Self::tri_index(rank, a, b)] = m;
        }
        Ok(CoxeterSystem { rank, bonds })
    }

    fn tri_index(rank: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < rank);
        i * rank - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// m_st (1 on the diagonal).
    pub fn bond(&self, i: usize, j: usize) -> Bond {
        if i == j {
            return Bond::Finite(1);
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.bonds[Self::tri_index(self.rank, a, b)]
    }

    pub fn generator_label(&self, i: usize) -> String {
        format!("s{}", i + 1)
    }

    /// The field parameter N: lcm of the finite bonds that contribute an
    /// irrational cosine (m ≥ 3), or 2 when there are none (then the Tits
    /// form is rational).
    pub fn field_n(&self) -> u32 {
        let mut n = 1u64;
        for m in &self.bonds {
            if let Bond::Finite(v) = m {
                if *v >= 3 {
                    n = num_integer::lcm(n, *v as u64);
                }
            }
        }
        if n == 1 {
            2
        } else {
            n.try_into().expect("lcm of bonds overflows u32")
        }
    }

    /// Canonical one-line form, used for hashing and cache keys.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("rank {}", self.rank);
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                s.push_str(&format!("; m {} {} = {}", i + 1, j + 1, self.bond(i, j)));
            }
        }
        s
    }

    /// Parses a preset name, inline text, or the contents of a spec file.
    pub fn parse(text: &str) -> Result<Self, SystemError> {
        let trimmed = text.trim();
        if let Some(sys) = Self::preset(trimmed)? {
            return Ok(sys);
        }
        let mut rank: Option<usize> = None;
        let mut pairs: Vec<(usize, usize, Bond)> = Vec::new();
        for raw in trimmed.lines().flat_map(|l| l.split(';')) {
            let stmt = raw.split('#').next().unwrap_or("").trim();
            if stmt.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = stmt.split_whitespace().collect();
            match tokens.as_slice() {
                ["rank", k] => {
                    let k: usize = k
                        .parse()
                        .map_err(|_| SystemError::Parse(format!("bad rank `{k}`")))?;
                    if rank.replace(k).is_some() {
                        return Err(SystemError::Parse("duplicate rank line".into()));
                    }
                }
                ["m", i, j, "=", v] => {
                    let r = rank.ok_or_else(|| {
                        SystemError::Parse("rank must come before bond lines".into())
                    })?;
                    let i: usize = i
                        .parse()
                        .map_err(|_| SystemError::Parse(format!("bad index `{i}`")))?;
                    let j: usize = j
                        .parse()
                        .map_err(|_| SystemError::Parse(format!("bad index `{j}`")))?;
                    if i == 0 || j == 0 || i > r || j > r {
                        return Err(SystemError::Parse(format!(
                            "bond indices ({i}, {j}) out of range for rank {r}"
                        )));
                    }
                    pairs.push((i - 1, j - 1, parse_bond(v)?));
                }
                _ => {
                    return Err(SystemError::Parse(format!(
                        "cannot parse statement `{stmt}` (expected `rank N` or `m i j = v`)"
                    )));
                }
            }
        }
        let rank = rank.ok_or_else(|| {
            SystemError::Parse("no rank line and not a known preset".into())
        })?;
        Self::new(rank, &pairs)
    }

    /// Known presets; `Ok(None)` when the string is not a preset name.
    fn preset(name: &str) -> Result<Option<Self>, SystemError> {
        let t = |p, q, r| {
            Self::new(3, &[(0, 1, p), (1, 2, q), (0, 2, r)]).map(Some)
        };
        let d = |m| Self::new(2, &[(0, 1, m)]).map(Some);
        match name {
            "A1" => Self::new(1, &[]).map(Some),
            "A2" => d(Bond::Finite(3)),
            "B2" | "C2" => d(Bond::Finite(4)),
            "G2" => d(Bond::Finite(6)),
            "A3" => t(Bond::Finite(3), Bond::Finite(3), Bond::Finite(2)),
            "B3" | "C3" => t(Bond::Finite(4), Bond::Finite(3), Bond::Finite(2)),
            "H3" => t(Bond::Finite(5), Bond::Finite(3), Bond::Finite(2)),
            "Atilde1" => d(Bond::Infinite),
            "Atilde2" => t(Bond::Finite(3), Bond::Finite(3), Bond::Finite(3)),
            "Ctilde2" => t(Bond::Finite(4), Bond::Finite(4), Bond::Finite(2)),
            "Gtilde2" => t(Bond::Finite(6), Bond::Finite(3), Bond::Finite(2)),
            _ => {
                if let Some(rest) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
                    return d(parse_bond(rest.trim())?);
                }
                if let Some(rest) = name
                    .strip_prefix("triangle(")
                    .and_then(|r| r.strip_suffix(')'))
                {
                    let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
                    if parts.len() != 3 {
                        return Err(SystemError::Parse(
                            "triangle(p,q,r) takes exactly three bonds".into(),
                        ));
                    }
                    return t(
                        parse_bond(parts[0])?,
                        parse_bond(parts[1])?,
                        parse_bond(parts[2])?,
                    );
                }
                Ok(None)
            }
        }
    }
}

fn parse_bond(v: &str) -> Result<Bond, SystemError> {
    match v {
        "inf" | "infinity" | "oo" | "∞" => Ok(Bond::Infinite),
        _ => {
            let m: u32 = v
                .parse()
                .map_err(|_| SystemError::Parse(format!("bad bond value `{v}`")))?;
            if m < 2 {
                return Err(SystemError::Parse(format!("bond value must be ≥ 2, got {m}")));
            }
            Ok(Bond::Finite(m))
        }
    }
}

impl fmt::Display for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_inline_text() {
        let sys = CoxeterSystem::parse("rank 3\nm 1 2 = 6\nm 2 3 = 3  # default elsewhere").unwrap();
        assert_eq!(sys.rank(), 3);
        assert_eq!(sys.bond(0, 1), Bond::Finite(6));
        assert_eq!(sys.bond(1, 2), Bond::Finite(3));
        assert_eq!(sys.bond(0, 2), Bond::Finite(2));
        assert_eq!(sys.bond(2, 0), Bond::Finite(2));
        assert_eq!(sys.bond(1, 1), Bond::Finite(1));

        let semi = CoxeterSystem::parse("rank 2; m 1 2 = inf").unwrap();
        assert_eq!(semi.bond(0, 1), Bond::Infinite);
    }

    #[test]
    fn parse_presets() {
        assert_eq!(
            CoxeterSystem::parse("Gtilde2").unwrap(),
            CoxeterSystem::parse("rank 3; m 1 2 = 6; m 2 3 = 3").unwrap()
        );
        assert_eq!(
            CoxeterSystem::parse("I2(inf)").unwrap(),
            CoxeterSystem::parse("rank 2; m 1 2 = inf").unwrap()
        );
        assert_eq!(
            CoxeterSystem::parse("triangle(3, 3, 4)").unwrap(),
            CoxeterSystem::parse("rank 3; m 1 2 = 3; m 2 3 = 3; m 1 3 = 4").unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        assert!(CoxeterSystem::parse("").is_err());
        assert!(CoxeterSystem::parse("rank 2; m 1 2 = 1").is_err());
        assert!(CoxeterSystem::parse("rank 2; m 1 3 = 3").is_err());
        assert!(CoxeterSystem::parse("m 1 2 = 3; rank 2").is_err());
        assert!(CoxeterSystem::parse("rank 2; m 1 2 == 3").is_err());
        assert!(CoxeterSystem::parse("nonsense words").is_err());
    }

    #[test]
    fn field_n_skips_rational_bonds() {
        assert_eq!(CoxeterSystem::parse("A2").unwrap().field_n(), 3);
        assert_eq!(CoxeterSystem::parse("I2(inf)").unwrap().field_n(), 2);
        assert_eq!(CoxeterSystem::parse("Gtilde2").unwrap().field_n(), 6);
        assert_eq!(CoxeterSystem::parse("triangle(3,3,4)").unwrap().field_n(), 12);
        assert_eq!(CoxeterSystem::parse("A3").unwrap().field_n(), 3);
    }

    #[test]
    fn canonical_string_round_trips() {
        let sys = CoxeterSystem::parse("triangle(5, 2, inf)").unwrap();
        let again = CoxeterSystem::parse(&sys.canonical_string()).unwrap();
        assert_eq!(sys, again);
    }
}
