//! Closed-form bounds on maximal cross-correlation and the verdicts that
//! compare them with exhaustive scans.
//!
//! Floors and ceilings of expressions involving square roots are computed
//! with integer square roots, so boundary cases are exact. Purely real bounds
//! (logarithms, fourth roots) are compared with an absolute tolerance of
//! [`BOUND_TOLERANCE`].

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arrays::FamilyId;
use crate::error::{domain, Error, Result};
use crate::numthy::{gcd, isqrt, mul_mod, pow_mod, PrimeContext};
use crate::xcorr::{FamilyMaxReport, ScanEngine, ShiftFilter, Witness};

pub const BOUND_TOLERANCE: f64 = 1e-9;

/// `(p - 1) / t`: maximal cross-correlation of W_p over `v = 0` (equality).
pub fn bound_dg_wp_v0(ctx: &PrimeContext) -> u64 {
    ctx.n_over_t()
}

/// `1 + floor((1 - 2/(p-1)) * sqrt(p))`: W_p over `v != 0`.
pub fn bound_gw_wp_vnz(ctx: &PrimeContext) -> u64 {
    // (1 - 2/(p-1)) sqrt(p) = sqrt((p-3)^2 p / (p-1)^2), and floor(sqrt(x)) = isqrt(floor(x))
    let p = ctx.p as u128;
    let num = (p - 3) * (p - 3) * p;
    let den = (p - 1) * (p - 1);
    1 + isqrt(num / den) as u64
}

/// `4 p log_p(alpha)`, the real-valued core of the W_p^el bound.
pub fn welch_log_term(p: u64, alpha: u64) -> f64 {
    4.0 * p as f64 * (alpha as f64).ln() / (p as f64).ln()
}

/// `max{4 p log_p(alpha) + 1, X}` with `X` the W_p bound for the prime's class.
pub fn bound_thm1_wpel(ctx: &PrimeContext, alpha: u64) -> Result<f64> {
    ctx.require_primitive(alpha)?;
    let x = if ctx.is_safe_prime {
        bound_gw_wp_vnz(ctx)
    } else {
        ctx.n_over_t()
    };
    Ok((welch_log_term(ctx.p, alpha) + 1.0).max(x as f64))
}

/// `floor(4 p log_p(alpha))`, the convention of the tabulated bound rows.
pub fn table4_value(ctx: &PrimeContext, alpha: u64) -> Result<u64> {
    ctx.require_primitive(alpha)?;
    Ok((welch_log_term(ctx.p, alpha) + BOUND_TOLERANCE).floor() as u64)
}

/// A bound table row is listed when the floored bound does not exceed `p - 2`,
/// the trivial ceiling for arrays of order `p - 1`.
pub fn table4_nontrivial(ctx: &PrimeContext, value: u64) -> bool {
    value <= ctx.p - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerCase {
    BothZero,
    UNonzeroVZero,
}

/// Bounds for P_p: `(p-1)/t` at the origin (equality) and
/// `ceil((p-2)/(p-1) (1 + sqrt(p)))` for `u != 0, v = 0`.
pub fn bound_ard_pp(ctx: &PrimeContext, case: PowerCase) -> u64 {
    match case {
        PowerCase::BothZero => ctx.n_over_t(),
        PowerCase::UNonzeroVZero => {
            // least k with k(p-1) - (p-2) >= (p-2) sqrt(p)
            let p = ctx.p as i128;
            let rhs_sq = (p - 2) * (p - 2) * p;
            let mut k = ((p - 2) as f64 * (1.0 + (p as f64).sqrt()) / (p - 1) as f64).floor() as i128;
            k = k.max(1) - 1;
            loop {
                let lhs = k * (p - 1) - (p - 2);
                if lhs >= 0 && lhs * lhs >= rhs_sq {
                    return k as u64;
                }
                k += 1;
            }
        }
    }
}

/// `1/2 + sqrt(p - 1)`: P_p over `u = 0, v != 0`.
pub fn bound_thm2_pp_u0_vnz(ctx: &PrimeContext) -> f64 {
    0.5 + ((ctx.p - 1) as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Equal => "=",
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

/// PW_p over `v = 0`: the Sidon ceiling for safe primes, `(p-1)/t` (equality) otherwise.
pub fn bound_thm4_pwp_v0(ctx: &PrimeContext) -> (f64, Relation) {
    if ctx.is_safe_prime {
        (sidon_bound(ctx.n), Relation::AtMost)
    } else {
        (ctx.n_over_t() as f64, Relation::Equal)
    }
}

/// `n^(1/2) + n^(1/4) + 1/2`, a strict upper bound on Sidon-set size in `[n]`.
pub fn sidon_bound(n: u64) -> f64 {
    let n = n as f64;
    n.sqrt() + n.sqrt().sqrt() + 0.5
}

/// Number of `x` in F_p with `x^n + a x^s + b = 0`, by evaluating every residue.
pub fn trinomial_root_count(p: u64, n: u64, s: u64, a: u64, b: u64) -> Result<u64> {
    let (a, b) = (a % p, b % p);
    if a == 0 || b == 0 {
        return Err(domain(if a == 0 { a } else { b }, "trinomial coefficients must be nonzero mod p"));
    }
    if s == 0 || n <= s {
        return Err(domain(s, "trinomial exponents must satisfy n > s >= 1"));
    }
    Ok((0..p)
        .filter(|&x| (pow_mod(x, n, p) + mul_mod(a, pow_mod(x, s, p), p) + b) % p == 0)
        .count() as u64)
}

/// `delta * floor(1/2 + sqrt((p-1)/delta))` with `delta = gcd(n, s, p-1)`.
pub fn trinomial_root_bound(p: u64, n: u64, s: u64) -> u64 {
    let delta = gcd(gcd(n, s), p - 1);
    let m = ((p - 1) / delta) as u128;
    // floor(1/2 + sqrt(m)) = largest k with (2k - 1)^2 <= 4m
    let k = (isqrt(4 * m) + 1) / 2;
    delta * k as u64
}

/// The bound instances checked against exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    DgWpV0,
    GwWpVnz,
    Thm1Wpel,
    ArdPp00,
    ArdPpUnzV0,
    Thm2PpU0Vnz,
    Thm4PwpV0,
    Thm5PwplU0,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::DgWpV0,
        TheoremId::GwWpVnz,
        TheoremId::Thm1Wpel,
        TheoremId::ArdPp00,
        TheoremId::ArdPpUnzV0,
        TheoremId::Thm2PpU0Vnz,
        TheoremId::Thm4PwpV0,
        TheoremId::Thm5PwplU0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::DgWpV0 => "DG_Wp_V0",
            TheoremId::GwWpVnz => "GW_Wp_VNZ",
            TheoremId::Thm1Wpel => "THM1_Wpel",
            TheoremId::ArdPp00 => "ARD_Pp_00",
            TheoremId::ArdPpUnzV0 => "ARD_Pp_UNZ_V0",
            TheoremId::Thm2PpU0Vnz => "THM2_Pp_U0_VNZ",
            TheoremId::Thm4PwpV0 => "THM4_PWp_V0",
            TheoremId::Thm5PwplU0 => "THM5_PWpl_U0",
        }
    }

    /// Family, shift filter and whether `f = g` pairs are scanned.
    pub fn scan(self) -> (FamilyId, ShiftFilter, bool) {
        match self {
            TheoremId::DgWpV0 => (FamilyId::Wp, ShiftFilter::VZero, false),
            TheoremId::GwWpVnz => (FamilyId::Wp, ShiftFilter::VNonzero, false),
            TheoremId::Thm1Wpel => (FamilyId::Wpel, ShiftFilter::All, false),
            TheoremId::ArdPp00 => (FamilyId::Pp, ShiftFilter::OriginOnly, false),
            TheoremId::ArdPpUnzV0 => (FamilyId::Pp, ShiftFilter::UNonzeroVZero, true),
            TheoremId::Thm2PpU0Vnz => (FamilyId::Pp, ShiftFilter::UZeroVNonzero, true),
            TheoremId::Thm4PwpV0 => (FamilyId::PWp, ShiftFilter::VZero, true),
            TheoremId::Thm5PwplU0 => (FamilyId::PWpl, ShiftFilter::UZero, true),
        }
    }

    pub fn is_applicable(self, ctx: &PrimeContext) -> bool {
        match self {
            TheoremId::Thm1Wpel => ctx.p >= 7,
            // the origin case compares distinct power permutations only
            TheoremId::ArdPp00 => FamilyId::Pp.size(ctx.totient_n) >= 2,
            _ => ctx.p >= 5,
        }
    }

    /// Bound value and claimed relation, evaluated without any scan.
    pub fn bound(self, ctx: &PrimeContext) -> Result<(f64, Relation)> {
        if !self.is_applicable(ctx) {
            return Err(Error::Inapplicable {
                what: self.name().into(),
                p: ctx.p,
            });
        }
        Ok(match self {
            TheoremId::DgWpV0 => (bound_dg_wp_v0(ctx) as f64, Relation::Equal),
            TheoremId::GwWpVnz => (bound_gw_wp_vnz(ctx) as f64, Relation::AtMost),
            TheoremId::Thm1Wpel => (
                bound_thm1_wpel(ctx, ctx.least_primitive_root())?,
                Relation::AtMost,
            ),
            TheoremId::ArdPp00 => (bound_ard_pp(ctx, PowerCase::BothZero) as f64, Relation::Equal),
            TheoremId::ArdPpUnzV0 => (
                bound_ard_pp(ctx, PowerCase::UNonzeroVZero) as f64,
                Relation::AtMost,
            ),
            TheoremId::Thm2PpU0Vnz => (bound_thm2_pp_u0_vnz(ctx), Relation::AtMost),
            TheoremId::Thm4PwpV0 | TheoremId::Thm5PwplU0 => bound_thm4_pwp_v0(ctx),
        })
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown theorem id {s:?}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One theorem instance at one prime: bound, exhaustive maximum, outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundVerdict {
    pub theorem_id: TheoremId,
    pub p: u64,
    pub bound_value: f64,
    pub empirical_value: u32,
    pub relation_claimed: Relation,
    pub holds: bool,
    pub witness: Option<Witness>,
}

pub fn relation_holds(relation: Relation, bound: f64, empirical: u32) -> bool {
    let e = empirical as f64;
    match relation {
        Relation::AtMost => e <= bound + BOUND_TOLERANCE,
        Relation::Equal => (e - bound).abs() <= BOUND_TOLERANCE,
    }
}

/// Signature of the scan a verdict consumes; lets callers substitute engines.
pub type ScanFn<'a> = dyn Fn(&PrimeContext, FamilyId, ShiftFilter, bool) -> Result<FamilyMaxReport> + 'a;

pub fn verify_theorem(ctx: &PrimeContext, id: TheoremId) -> Result<BoundVerdict> {
    let engine = ScanEngine::default();
    verify_theorem_with(ctx, id, &|c, f, s, a| engine.family_max(c, f, s, a))
}

/// Bound vs. restricted exhaustive maximum, using the supplied scan.
pub fn verify_theorem_with(ctx: &PrimeContext, id: TheoremId, scan: &ScanFn<'_>) -> Result<BoundVerdict> {
    let (bound_value, relation) = id.bound(ctx)?;
    let (family, filter, include_auto) = id.scan();
    let report = scan(ctx, family, filter, include_auto)?;
    Ok(BoundVerdict {
        theorem_id: id,
        p: ctx.p,
        bound_value,
        empirical_value: report.value,
        relation_claimed: relation,
        holds: relation_holds(relation, bound_value, report.value),
        witness: report.witnesses.first().cloned(),
    })
}

/// Cases with no bound claimed anywhere: P_p with `u != 0, v != 0` and PW_p
/// with `v != 0`. Only the exhaustive maxima are reported.
pub const OPEN_CASES: [(FamilyId, ShiftFilter); 2] = [
    (FamilyId::Pp, ShiftFilter::UNonzeroVNonzero),
    (FamilyId::PWp, ShiftFilter::VNonzero),
];
