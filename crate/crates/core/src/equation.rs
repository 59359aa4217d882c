//! The equation family `u^x + v^y = w^z` with `u = 5pn² − 1`,
//! `v = p(p − 5)n² + 1`, `w = pn`, its congruence and Jacobi-symbol case
//! analysis, exact solution checks, and a brute-force oracle.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::prime::{is_prime, mul_mod, pow_mod};
use crate::arith::jacobi;
use crate::error::{Error, Result};

/// Default ceiling on the bit size of exact powers in [`check_solution`].
pub const EXACT_BUDGET_BITS: u64 = 1 << 26;

/// Large primes used as sieve moduli before exact confirmation.
pub const SIEVE_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// One member of the equation family, with `u + v = w²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquationInstance {
    p: u64,
    n: u64,
    u: u128,
    v: u128,
    w: u128,
}

impl EquationInstance {
    /// Builds the instance for a prime `p > 3`, `p ≡ 3 (mod 4)`, and `n ≥ 1`.
    pub fn new(p: u64, n: u64) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidInstance {
            p,
            n,
            reason: reason.to_string(),
        };
        if n == 0 {
            return Err(bad("n must be positive"));
        }
        if p <= 3 {
            return Err(bad("p must exceed 3"));
        }
        if p % 4 != 3 {
            return Err(bad("p must be 3 mod 4"));
        }
        if p >= 1 << 32 || n >= 1 << 32 {
            return Err(bad("p and n must stay below 2^32"));
        }
        if !is_prime(p as u128)? {
            return Err(bad("p must be prime"));
        }
        let (p128, n128) = (p as u128, n as u128);
        let n2 = n128 * n128;
        let u = 5 * p128 * n2 - 1;
        let v = p128 * (p128 - 5) * n2 + 1;
        let w = p128 * n128;
        assert_eq!(u + v, w * w, "u + v = w² must hold for p = {p}, n = {n}");
        Ok(EquationInstance { p, n, u, v, w })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn u(&self) -> u128 {
        self.u
    }
    pub fn v(&self) -> u128 {
        self.v
    }
    pub fn w(&self) -> u128 {
        self.w
    }

    /// `u^x + v^y` exactly.
    pub fn lhs(&self, x: u64, y: u64) -> BigUint {
        BigUint::from(self.u).pow(x) + BigUint::from(self.v).pow(y)
    }

    /// Residue of `u^x + v^y − w^z` being zero modulo `m`.
    pub fn holds_mod(&self, s: SolutionTriple, m: u64) -> bool {
        let r = |b: u128, e: u64| pow_mod((b % m as u128) as u64, e, m);
        (r(self.u, s.x) + r(self.v, s.y)) % m == r(self.w, s.z)
    }
}

pub fn make_instance(p: u64, n: u64) -> Result<EquationInstance> {
    EquationInstance::new(p, n)
}

/// Candidate exponents, all positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionTriple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl SolutionTriple {
    pub const TRIVIAL: SolutionTriple = SolutionTriple { x: 1, y: 1, z: 2 };

    pub fn new(x: u64, y: u64, z: u64) -> Result<Self> {
        if x == 0 || y == 0 || z == 0 {
            return Err(Error::InvalidArgument(format!(
                "exponents must be positive, got ({x}, {y}, {z})"
            )));
        }
        Ok(SolutionTriple { x, y, z })
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::TRIVIAL
    }
}

impl fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    EvenN,
    OddN1Mod4,
    OddN3Mod4,
    OutOfScope,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::EvenN => "EvenN",
            CaseTag::OddN1Mod4 => "OddN1Mod4",
            CaseTag::OddN3Mod4 => "OddN3Mod4",
            CaseTag::OutOfScope => "OutOfScope",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Unknown,
}

/// Facts every solution of a classified instance must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseConstraints {
    pub x_forced_to_1: bool,
    pub y_parity: Parity,
    pub z_parity: Parity,
    pub two_y_gt_z: bool,
    /// Set for even `n`: the congruence argument leaves only `(1, 1, 2)`.
    pub only_trivial_solution: bool,
}

impl CaseConstraints {
    const NONE: CaseConstraints = CaseConstraints {
        x_forced_to_1: false,
        y_parity: Parity::Unknown,
        z_parity: Parity::Unknown,
        two_y_gt_z: false,
        only_trivial_solution: false,
    };

    /// Whether `(y, z)` (with `x = 1`) is compatible with these constraints.
    pub fn admits(&self, y: u64, z: u64) -> bool {
        (self.y_parity != Parity::Even || y % 2 == 0)
            && (self.z_parity != Parity::Even || z % 2 == 0)
            && (!self.two_y_gt_z || 2 * y > z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseClassification {
    pub tag: CaseTag,
    pub constraints: CaseConstraints,
}

pub fn classify(inst: &EquationInstance) -> CaseClassification {
    let (p, n) = (inst.p, inst.n);
    if n % 2 == 0 {
        return CaseClassification {
            tag: CaseTag::EvenN,
            constraints: CaseConstraints {
                x_forced_to_1: true,
                only_trivial_solution: true,
                ..CaseConstraints::NONE
            },
        };
    }
    let pn5 = ((p % 5) * (n % 5)) % 5;
    if pn5 != 1 && pn5 != 4 {
        return CaseClassification {
            tag: CaseTag::OutOfScope,
            constraints: CaseConstraints::NONE,
        };
    }
    if n % 4 == 1 {
        CaseClassification {
            tag: CaseTag::OddN1Mod4,
            constraints: CaseConstraints {
                x_forced_to_1: true,
                y_parity: Parity::Even,
                z_parity: Parity::Even,
                ..CaseConstraints::NONE
            },
        }
    } else {
        CaseClassification {
            tag: CaseTag::OddN3Mod4,
            constraints: CaseConstraints {
                x_forced_to_1: true,
                y_parity: Parity::Even,
                two_y_gt_z: true,
                ..CaseConstraints::NONE
            },
        }
    }
}

/// Reduction of the equation modulo `p`: `(−1)^x + 1 ≡ 0`, i.e. `x` odd.
pub fn x_is_odd_check(inst: &EquationInstance, x: u64) -> bool {
    let p = inst.p;
    let ux = pow_mod((inst.u % p as u128) as u64, x, p);
    (ux + 1) % p == 0
}

/// `(u/v)` and `(w/v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiPair {
    pub uv: i8,
    pub wv: i8,
}

impl JacobiPair {
    /// The values that force `z` even when `n ≡ 1 (mod 4)`.
    pub fn forces_even_z(&self) -> bool {
        self.uv == 1 && self.wv == -1
    }
}

pub fn jacobi_constraints(inst: &EquationInstance) -> Result<JacobiPair> {
    if inst.n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "Jacobi constraints need odd n, got {}",
            inst.n
        )));
    }
    Ok(JacobiPair {
        uv: jacobi(inst.u as i128, inst.v)?,
        wv: jacobi(inst.w as i128, inst.v)?,
    })
}

/// `5px + p(p − 5)y ≡ 0 (mod n)`, necessary for any solution with `z ≥ 3`.
pub fn even_n_congruence(inst: &EquationInstance, x: u64, y: u64) -> bool {
    let (p, n) = (inst.p as u128, inst.n as u128);
    let a = (5 * p % n) * (x as u128 % n) % n;
    let b = (p * (p - 5) % n) * (y as u128 % n) % n;
    (a + b) % n == 0
}

/// `5 + (p − 5)y ≡ 0 (mod pn²)`, necessary when `x = 1` and `z ≥ 4`.
pub fn pillai_congruence(inst: &EquationInstance, y: u64) -> bool {
    let (p, n) = (inst.p as u128, inst.n as u128);
    let m = p * n * n;
    (5 + (p - 5) % m * (y as u128 % m)) % m == 0
}

fn estimated_bits(base: u128, exp: u64) -> u64 {
    (128 - base.leading_zeros()) as u64 * exp
}

/// Exact test of `u^x + v^y = w^z`.
pub fn check_solution(inst: &EquationInstance, s: SolutionTriple) -> Result<bool> {
    check_solution_with_budget(inst, s, EXACT_BUDGET_BITS)
}

pub fn check_solution_with_budget(
    inst: &EquationInstance,
    s: SolutionTriple,
    budget_bits: u64,
) -> Result<bool> {
    let bits = estimated_bits(inst.u, s.x)
        .max(estimated_bits(inst.v, s.y))
        .max(estimated_bits(inst.w, s.z));
    if bits > budget_bits {
        return Err(Error::BudgetExceeded {
            bits,
            budget: budget_bits,
        });
    }
    if !SIEVE_PRIMES.iter().all(|&m| inst.holds_mod(s, m)) {
        return Ok(false);
    }
    Ok(inst.lhs(s.x, s.y) == BigUint::from(inst.w).pow(s.z))
}

/// All solutions with `z ≤ 3`, by exhaustive search.
pub fn small_z_solutions(inst: &EquationInstance) -> Vec<SolutionTriple> {
    let mut out = Vec::new();
    for z in 1..=3u32 {
        let target = inst.w.pow(z);
        let mut ux = inst.u;
        let mut x = 1;
        while ux < target {
            let mut vy = inst.v;
            let mut y = 1;
            while vy < target {
                if ux + vy == target {
                    out.push(SolutionTriple { x, y, z: z as u64 });
                }
                vy = match vy.checked_mul(inst.v) {
                    Some(next) => next,
                    None => break,
                };
                y += 1;
            }
            ux = match ux.checked_mul(inst.u) {
                Some(next) => next,
                None => break,
            };
            x += 1;
        }
    }
    out
}

/// Solutions with `x = 1` and `y ≤ 2`: `u + v^y` must be an exact power of `w`.
pub fn small_y_solutions(inst: &EquationInstance) -> Vec<SolutionTriple> {
    let w = BigUint::from(inst.w);
    (1..=2u64)
        .filter_map(|y| {
            let mut rest = BigUint::from(inst.u) + BigUint::from(inst.v).pow(y);
            let mut z = 0;
            while (&rest % &w).is_zero() {
                rest /= &w;
                z += 1;
            }
            (rest.is_one() && z > 0).then_some(SolutionTriple { x: 1, y, z })
        })
        .collect()
}

/// Residue tables `u^x, v^y, w^z mod m` for a set of moduli.
pub struct PowerTables {
    moduli: Vec<u64>,
    u: Vec<Vec<u64>>,
    v: Vec<Vec<u64>>,
    w: Vec<Vec<u64>>,
}

fn power_table(base: u128, max_exp: u64, m: u64) -> Vec<u64> {
    let b = (base % m as u128) as u64;
    let mut out = Vec::with_capacity(max_exp as usize + 1);
    let mut acc = 1 % m;
    for _ in 0..=max_exp {
        out.push(acc);
        acc = mul_mod(acc, b, m);
    }
    out
}

impl PowerTables {
    pub fn new(inst: &EquationInstance, moduli: &[u64], x_max: u64, y_max: u64, z_max: u64) -> Self {
        PowerTables {
            moduli: moduli.to_vec(),
            u: moduli.iter().map(|&m| power_table(inst.u, x_max, m)).collect(),
            v: moduli.iter().map(|&m| power_table(inst.v, y_max, m)).collect(),
            w: moduli.iter().map(|&m| power_table(inst.w, z_max, m)).collect(),
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `u^x + v^y ≡ w^z` modulo every table modulus.
    pub fn matches(&self, x: u64, y: u64, z: u64) -> bool {
        self.moduli.iter().enumerate().all(|(i, &m)| {
            (self.u[i][x as usize] + self.v[i][y as usize]) % m == self.w[i][z as usize]
        })
    }
}

/// Five smallest primes coprime to `u·v·w`, plus `n²` when `n > 1`.
pub fn prefilter_moduli(inst: &EquationInstance) -> Vec<u64> {
    let mut out: Vec<u64> = (2u64..)
        .filter(|&q| is_prime(q as u128).unwrap_or(false))
        .filter(|&q| {
            let q = q as u128;
            inst.u % q != 0 && inst.v % q != 0 && inst.w % q != 0
        })
        .take(5)
        .collect();
    if inst.n > 1 {
        out.push(inst.n * inst.n);
    }
    out
}

/// Every `(x, y, z)` in `[1, x_max] × [1, y_max] × [1, z_max]` solving the
/// equation exactly, sorted lexicographically.
pub fn brute_force(
    inst: &EquationInstance,
    x_max: u64,
    y_max: u64,
    z_max: u64,
) -> Result<Vec<SolutionTriple>> {
    if x_max < 2 || y_max < 2 || z_max < 2 {
        return Err(Error::InvalidArgument(
            "brute-force box bounds must be at least 2".into(),
        ));
    }
    let tables = PowerTables::new(inst, &prefilter_moduli(inst), x_max, y_max, z_max);
    let found: Result<Vec<Vec<SolutionTriple>>> = (1..=x_max)
        .into_par_iter()
        .map(|x| {
            let mut hits = Vec::new();
            for y in 1..=y_max {
                for z in 1..=z_max {
                    if tables.matches(x, y, z) {
                        let s = SolutionTriple { x, y, z };
                        if check_solution(inst, s)? {
                            hits.push(s);
                        }
                    }
                }
            }
            Ok(hits)
        })
        .collect();
    let mut all: Vec<SolutionTriple> = found?.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}
