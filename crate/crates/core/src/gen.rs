//! Seeded random triples.
//!
//! The stream is SplitMix64: the state advances by `0x9E3779B97F4A7C15` and
//! each output is mixed with the multipliers `0xBF58476D1CE4E5B9` and
//! `0x94D049BB133111EB` (shifts 30, 27, 31). Draws are consumed in this order
//! for every attempt:
//!
//! 1. one draw per ordered pair `(i, j)` in row-major order; the edge
//!    `x_i > x_j` is kept when the top 53 bits `r` satisfy
//!    `r * den < num * 2^53`;
//! 2. a Fisher–Yates shuffle of `0..nx`, with `i` running from `nx - 1` down
//!    to 1 and `j = below(i + 1)`; `below(n)` rejects draws at or above the
//!    largest multiple of `n` and returns the remainder.
//!
//! Symbol `perm[i]` gets class `i % ny`. `X` symbols are named `x0, x1, ...`;
//! classes are named `a, b, ...` (or `y0, y1, ...` past 26) in order of first
//! appearance along `x0, x1, ...`. An attempt is rejected when the edge graph
//! is not essential or a requested flag fails, and the stream carries on.

use std::fmt;
use std::str::FromStr;

use crate::error::GenError;
use crate::finiteness::is_finite_to_one;
use crate::triple::{FactorTriple, ShiftOfFiniteType};

pub const MAX_ATTEMPTS: usize = 1000;

/// A rational edge probability in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Density {
    num: u64,
    den: u64,
}

impl Density {
    pub fn new(num: u64, den: u64) -> Result<Self, GenError> {
        if den == 0 || num == 0 || num > den {
            return Err(GenError::InvalidParams(format!("density {num}/{den} is not in (0, 1]")));
        }
        Ok(Density { num, den })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }
}

impl FromStr for Density {
    type Err = GenError;

    /// Accepts `a/b`, an integer, or a decimal such as `0.35`.
    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::InvalidParams(format!("cannot read density {s:?}"));
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
        if let Some((a, b)) = s.split_once('/') {
            if !digits(a) || !digits(b) {
                return Err(bad());
            }
            return Density::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        }
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        if !(digits(whole) || whole.is_empty() && digits(frac)) || !(frac.is_empty() || digits(frac)) {
            return Err(bad());
        }
        if frac.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = whole.checked_mul(den).and_then(|w| w.checked_add(frac)).ok_or_else(bad)?;
        Density::new(num, den)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub nx: usize,
    pub ny: usize,
    pub density: Density,
    pub seed: u64,
    pub require_finite_to_one: bool,
    pub require_irreducible: bool,
}

impl GenParams {
    pub fn new(nx: usize, ny: usize, density: Density, seed: u64) -> Self {
        GenParams { nx, ny, density, seed, require_finite_to_one: false, require_irreducible: false }
    }

    pub fn finite_to_one(mut self) -> Self {
        self.require_finite_to_one = true;
        self
    }

    pub fn irreducible(mut self) -> Self {
        self.require_irreducible = true;
        self
    }
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`, `n > 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let r = self.next_u64();
            if r < zone {
                return r % n;
            }
        }
    }

    pub fn bernoulli(&mut self, p: Density) -> bool {
        let r = (self.next_u64() >> 11) as u128;
        r * (p.den as u128) < (p.num as u128) << 53
    }
}

fn y_name(rank: usize, ny: usize) -> String {
    if ny <= 26 {
        ((b'a' + rank as u8) as char).to_string()
    } else {
        format!("y{rank}")
    }
}

fn attempt(p: &GenParams, rng: &mut SplitMix64) -> Option<FactorTriple> {
    let mut edges = Vec::new();
    for i in 0..p.nx {
        for j in 0..p.nx {
            if rng.bernoulli(p.density) {
                edges.push((i, j));
            }
        }
    }
    let mut perm: Vec<usize> = (0..p.nx).collect();
    for i in (1..p.nx).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    let mut class = vec![0; p.nx];
    for (i, &a) in perm.iter().enumerate() {
        class[a] = i % p.ny;
    }
    let mut rank = vec![usize::MAX; p.ny];
    let mut next = 0;
    let labels = class
        .iter()
        .map(|&c| {
            if rank[c] == usize::MAX {
                rank[c] = next;
                next += 1;
            }
            y_name(rank[c], p.ny)
        })
        .collect();
    let names = (0..p.nx).map(|i| format!("x{i}")).collect();
    let x = ShiftOfFiniteType::new(names, &edges).ok()?;
    if !x.is_essential() || p.require_irreducible && !x.is_irreducible() {
        return None;
    }
    let t = FactorTriple::new(x, labels).ok()?;
    if p.require_finite_to_one && !is_finite_to_one(&t) {
        return None;
    }
    Some(t)
}

/// A deterministic function of `p`.
pub fn random_triple(p: &GenParams) -> Result<FactorTriple, GenError> {
    if p.nx == 0 || p.ny == 0 || p.ny > p.nx {
        return Err(GenError::InvalidParams(format!("need 1 <= ny <= nx, got nx={} ny={}", p.nx, p.ny)));
    }
    let mut rng = SplitMix64::new(p.seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(t) = attempt(p, &mut rng) {
            return Ok(t);
        }
    }
    Err(GenError::RetriesExhausted(MAX_ATTEMPTS))
}
