//! Permutations of `[n]` and the algebraic families built from them:
//! exponential and logarithmic Welch arrays, power permutations, and their
//! unions.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::numthy::{gcd, mul_mod, pow_mod, DlogTable, PrimeContext};
use crate::xcorr::{correlation_grid, max_over, ShiftFilter};

/// A bijection on `[n] = {1, ..., n}`, stored as `[f(1), ..., f(n)]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` hits every element of `[values.len()]` once.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::NotPermutation {
                order: 0,
                detail: "empty".into(),
            });
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let slot = v as usize;
            if slot == 0 || slot > n {
                return Err(Error::NotPermutation {
                    order: n,
                    detail: format!("value {v} outside [1, {n}]"),
                });
            }
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::NotPermutation {
                    order: n,
                    detail: format!("value {v} repeated"),
                });
            }
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `f(i)` for one-indexed `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// The values `[f(1), ..., f(n)]`.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.order()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Self { values: inv }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Comma-separated one-indexed values, e.g. `3,2,6,4,5,1`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

pub fn inverse(f: &Permutation) -> Permutation {
    f.inverse()
}

/// How a family member was built. Family members always use shift `c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MemberLabel {
    WelchExp(u64),
    WelchLog(u64),
    Power(u64),
}

impl MemberLabel {
    /// Builds the permutation this label names.
    pub fn build(self, ctx: &PrimeContext) -> Result<Permutation> {
        match self {
            MemberLabel::WelchExp(a) => welch_exp(ctx, a, 0),
            MemberLabel::WelchLog(a) => welch_log(ctx, a, 0),
            MemberLabel::Power(d) => power_perm(ctx, d),
        }
    }
}

impl fmt::Display for MemberLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MemberLabel::WelchExp(a) => write!(f, "welch-exp:{a}"),
            MemberLabel::WelchLog(a) => write!(f, "welch-log:{a}"),
            MemberLabel::Power(d) => write!(f, "power:{d}"),
        }
    }
}

impl FromStr for MemberLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("member spec {s:?} has no ':'")))?;
        let arg: u64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad parameter in member spec {s:?}")))?;
        match kind.trim() {
            "welch-exp" => Ok(MemberLabel::WelchExp(arg)),
            "welch-log" => Ok(MemberLabel::WelchLog(arg)),
            "power" => Ok(MemberLabel::Power(arg)),
            other => Err(Error::Parse(format!("unknown member kind {other:?}"))),
        }
    }
}

impl Serialize for MemberLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub label: MemberLabel,
    pub permutation: Permutation,
}

/// The six families studied: W_p, W_p^l, W_p^el, P_p, PW_p and PW_p^l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Wp,
    Wpl,
    Wpel,
    Pp,
    PWp,
    PWpl,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::Wp,
        FamilyId::Wpl,
        FamilyId::Wpel,
        FamilyId::Pp,
        FamilyId::PWp,
        FamilyId::PWpl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Wp => "Wp",
            FamilyId::Wpl => "Wpl",
            FamilyId::Wpel => "Wpel",
            FamilyId::Pp => "Pp",
            FamilyId::PWp => "PWp",
            FamilyId::PWpl => "PWpl",
        }
    }

    /// Family size as a function of `phi(p - 1)`.
    pub fn size(self, totient_n: u64) -> u64 {
        match self {
            FamilyId::Wp | FamilyId::Wpl => totient_n,
            FamilyId::Wpel => 2 * totient_n,
            FamilyId::Pp => totient_n - 1,
            FamilyId::PWp | FamilyId::PWpl => 2 * totient_n - 1,
        }
    }

    /// Whether the family's maximal correlation also counts `f = g` at
    /// nonzero shifts. The Welch families are defined over distinct pairs only.
    pub fn default_include_auto(self) -> bool {
        matches!(self, FamilyId::Pp | FamilyId::PWp | FamilyId::PWpl)
    }

    fn has_exp(self) -> bool {
        matches!(self, FamilyId::Wp | FamilyId::Wpel | FamilyId::PWp)
    }

    fn has_log(self) -> bool {
        matches!(self, FamilyId::Wpl | FamilyId::Wpel | FamilyId::PWpl)
    }

    fn has_power(self) -> bool {
        matches!(self, FamilyId::Pp | FamilyId::PWp | FamilyId::PWpl)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn check_shift(ctx: &PrimeContext, c: u64) -> Result<()> {
    if c > ctx.p - 2 {
        return Err(domain(c, "shift c must lie in [0, p-2]"));
    }
    Ok(())
}

/// Exponential Welch array: `f(j) = alpha^(j-1+c) mod p` for `j` in `[p-1]`.
pub fn welch_exp(ctx: &PrimeContext, alpha: u64, c: u64) -> Result<Permutation> {
    ctx.require_primitive(alpha)?;
    check_shift(ctx, c)?;
    let p = ctx.p;
    let mut x = pow_mod(alpha, c, p);
    let values = (0..ctx.n)
        .map(|_| {
            let v = x as u32;
            x = mul_mod(x, alpha, p);
            v
        })
        .collect();
    Ok(Permutation { values })
}

/// Logarithmic Welch array: `g(j) = 1 + c + log_alpha(j) (mod p-1)`, with the
/// zero residue represented as `p - 1`.
pub fn welch_log(ctx: &PrimeContext, alpha: u64, c: u64) -> Result<Permutation> {
    check_shift(ctx, c)?;
    let logs = DlogTable::new(ctx, alpha)?;
    let n = ctx.n;
    let values = (1..=n)
        .map(|j| {
            let r = (1 + c + logs.log(j)) % n;
            if r == 0 {
                n as u32
            } else {
                r as u32
            }
        })
        .collect();
    Ok(Permutation { values })
}

/// Power permutation `i -> i^d mod p` on `[p-1]`; `d = 1` (the identity) is excluded.
pub fn power_perm(ctx: &PrimeContext, d: u64) -> Result<Permutation> {
    if d <= 1 || d > ctx.p - 2 {
        return Err(domain(d, "power exponent must satisfy 1 < d <= p-2"));
    }
    if gcd(d, ctx.n) != 1 {
        return Err(domain(d, "power exponent must be coprime to p-1"));
    }
    let values = (1..=ctx.n).map(|i| pow_mod(i, d, ctx.p) as u32).collect();
    Ok(Permutation { values })
}

/// Costas test through the auto-correlation grid: every off-origin entry <= 1.
pub fn is_costas_grid(f: &Permutation) -> bool {
    if f.order() == 1 {
        return true;
    }
    let grid = correlation_grid(f, f).expect("same order");
    let (value, _) = max_over(&grid, ShiftFilter::All, true).expect("order >= 2 has off-origin shifts");
    value <= 1
}

/// Costas test through the difference triangle: for each row distance `k`,
/// the signed differences `f(i+k) - f(i)` are pairwise distinct.
pub fn is_costas_difference_triangle(f: &Permutation) -> bool {
    let n = f.order();
    let v = f.values();
    // differences lie in [-(n-1), n-1]; stamp with the row distance to avoid clearing
    let mut stamp = vec![0usize; 2 * n];
    for k in 1..n {
        for i in 0..n - k {
            let slot = (v[i + k] as isize - v[i] as isize + n as isize) as usize;
            if stamp[slot] == k {
                return false;
            }
            stamp[slot] = k;
        }
    }
    true
}

/// Indices `i` with `f(i) = i`, ascending.
pub fn fixed_points(f: &Permutation) -> Vec<u32> {
    f.values()
        .iter()
        .enumerate()
        .filter(|&(i, &v)| v as usize == i + 1)
        .map(|(_, &v)| v)
        .collect()
}

/// True iff all pairwise differences of the (distinct) marks are distinct.
pub fn is_golomb_ruler(marks: &[i64]) -> bool {
    let mut diffs = std::collections::HashSet::new();
    for (k, &a) in marks.iter().enumerate() {
        for &b in &marks[k + 1..] {
            if !diffs.insert((a - b).abs()) {
                return false;
            }
        }
    }
    true
}

/// Members of a family in canonical order: Welch members by ascending
/// primitive root (exponential before logarithmic), then power members by
/// ascending exponent.
pub fn enumerate_family(ctx: &PrimeContext, id: FamilyId) -> Result<Vec<FamilyMember>> {
    if id == FamilyId::Wpel && ctx.p <= 5 {
        return Err(Error::Inapplicable {
            what: "family Wpel".into(),
            p: ctx.p,
        });
    }
    let mut labels = Vec::with_capacity(id.size(ctx.totient_n) as usize);
    if id.has_exp() {
        labels.extend(ctx.primitive_roots.iter().map(|&a| MemberLabel::WelchExp(a)));
    }
    if id.has_log() {
        labels.extend(ctx.primitive_roots.iter().map(|&a| MemberLabel::WelchLog(a)));
    }
    if id.has_power() {
        labels.extend(
            (2..=ctx.p - 2)
                .filter(|&d| gcd(d, ctx.n) == 1)
                .map(MemberLabel::Power),
        );
    }
    labels
        .into_iter()
        .map(|label| {
            Ok(FamilyMember {
                label,
                permutation: label.build(ctx)?,
            })
        })
        .collect()
}
