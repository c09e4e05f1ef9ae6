//! Aperiodic cross-correlation of permutations and exhaustive family scans.
//!
//! `Psi_{f,g}(u, v)` counts indices `i` with `g(i + u) = f(i) + v`, i.e. dots
//! of `f` that land on dots of `g` after shifting by `u` columns and `v` rows.
//! Three routes compute it:
//!
//! * [`cross_correlation_at`] evaluates the definition directly at one shift
//!   and serves as the reference oracle;
//! * [`correlation_grid`] fills every shift in one `O(n^2)` histogram pass;
//! * [`pair_max`] streams the same histogram one column shift at a time and
//!   keeps only the running maximum. It is what the family scans run.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arrays::{enumerate_family, FamilyId, FamilyMember, MemberLabel, Permutation};
use crate::error::{Error, Result};
use crate::numthy::PrimeContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ShiftPair {
    /// Horizontal (index) shift.
    pub u: i32,
    /// Vertical (value) shift.
    pub v: i32,
}

impl ShiftPair {
    pub const ORIGIN: ShiftPair = ShiftPair { u: 0, v: 0 };

    pub fn new(u: i32, v: i32) -> Self {
        Self { u, v }
    }
}

/// Which shifts a maximum is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftFilter {
    All,
    /// Any `u`, `v = 0`.
    VZero,
    /// `u = 0`, any `v`.
    UZero,
    /// Any `u`, `v != 0`.
    VNonzero,
    UNonzeroVZero,
    UZeroVNonzero,
    UNonzeroVNonzero,
    OriginOnly,
    ExcludeOrigin,
}

impl ShiftFilter {
    pub const ALL: [ShiftFilter; 9] = [
        ShiftFilter::All,
        ShiftFilter::VZero,
        ShiftFilter::UZero,
        ShiftFilter::VNonzero,
        ShiftFilter::UNonzeroVZero,
        ShiftFilter::UZeroVNonzero,
        ShiftFilter::UNonzeroVNonzero,
        ShiftFilter::OriginOnly,
        ShiftFilter::ExcludeOrigin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShiftFilter::All => "ALL",
            ShiftFilter::VZero => "V_ZERO",
            ShiftFilter::UZero => "U_ZERO",
            ShiftFilter::VNonzero => "V_NONZERO",
            ShiftFilter::UNonzeroVZero => "U_NONZERO_V_ZERO",
            ShiftFilter::UZeroVNonzero => "U_ZERO_V_NONZERO",
            ShiftFilter::UNonzeroVNonzero => "U_NONZERO_V_NONZERO",
            ShiftFilter::OriginOnly => "ORIGIN_ONLY",
            ShiftFilter::ExcludeOrigin => "EXCLUDE_ORIGIN",
        }
    }

    #[inline]
    pub fn admits(self, s: ShiftPair) -> bool {
        self.admits_u(s.u) && self.admits_v(s.u, s.v)
    }

    #[inline]
    fn admits_u(self, u: i32) -> bool {
        match self {
            ShiftFilter::UZero | ShiftFilter::UZeroVNonzero | ShiftFilter::OriginOnly => u == 0,
            ShiftFilter::UNonzeroVZero | ShiftFilter::UNonzeroVNonzero => u != 0,
            _ => true,
        }
    }

    #[inline]
    fn admits_v(self, u: i32, v: i32) -> bool {
        match self {
            ShiftFilter::VZero | ShiftFilter::UNonzeroVZero | ShiftFilter::OriginOnly => v == 0,
            ShiftFilter::VNonzero | ShiftFilter::UZeroVNonzero | ShiftFilter::UNonzeroVNonzero => {
                v != 0
            }
            ShiftFilter::ExcludeOrigin => u != 0 || v != 0,
            ShiftFilter::All | ShiftFilter::UZero => true,
        }
    }

    /// Only `v = 0` is admitted, so a column shift needs one count, not a histogram.
    fn v_zero_only(self) -> bool {
        matches!(
            self,
            ShiftFilter::VZero | ShiftFilter::UNonzeroVZero | ShiftFilter::OriginOnly
        )
    }
}

impl fmt::Display for ShiftFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShiftFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        ShiftFilter::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| Error::Parse(format!("unknown shift filter {s:?}")))
    }
}

impl Serialize for ShiftFilter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Dense table of `Psi(u, v)` for `u, v` in `[-(n-1), n-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationGrid {
    order: usize,
    // row-major by u, then v
    counts: Vec<u16>,
}

impl CorrelationGrid {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Side length `2n - 1`.
    pub fn side(&self) -> usize {
        2 * self.order - 1
    }

    /// Largest `|u|` or `|v|` with possibly nonzero entries.
    pub fn radius(&self) -> i32 {
        self.order as i32 - 1
    }

    /// `Psi(u, v)`; zero outside the support.
    pub fn get(&self, s: ShiftPair) -> u16 {
        let r = self.radius();
        if s.u.abs() > r || s.v.abs() > r {
            return 0;
        }
        self.counts[self.index(s)]
    }

    fn index(&self, s: ShiftPair) -> usize {
        let r = self.radius();
        (s.u + r) as usize * self.side() + (s.v + r) as usize
    }

    /// Every shift in the support with its count, `u` ascending then `v` ascending.
    pub fn entries(&self) -> impl Iterator<Item = (ShiftPair, u16)> + '_ {
        let r = self.radius();
        (-r..=r).flat_map(move |u| {
            (-r..=r).map(move |v| {
                let s = ShiftPair { u, v };
                (s, self.counts[self.index(s)])
            })
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

fn check_orders(f: &Permutation, g: &Permutation) -> Result<usize> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch(f.order(), g.order()));
    }
    Ok(f.order())
}

/// Direct evaluation of `Psi_{f,g}(u, v)` in `O(n)`.
pub fn cross_correlation_at(f: &Permutation, g: &Permutation, s: ShiftPair) -> Result<usize> {
    let n = check_orders(f, g)? as i64;
    let (u, v) = (s.u as i64, s.v as i64);
    Ok((1..=n)
        .filter(|&i| {
            let j = i + u;
            (1..=n).contains(&j) && g.at(j as usize) as i64 == f.at(i as usize) as i64 + v
        })
        .count())
}

/// All of `Psi_{f,g}` in a single pass over index pairs `(i, j)`.
pub fn correlation_grid(f: &Permutation, g: &Permutation) -> Result<CorrelationGrid> {
    let n = check_orders(f, g)?;
    assert!(n <= u16::MAX as usize, "order {n} overflows 16-bit counters");
    let side = 2 * n - 1;
    let r = n - 1;
    let mut counts = vec![0u16; side * side];
    let fv = f.values();
    let gv = g.values();
    for (i, &fi) in fv.iter().enumerate() {
        for (j, &gj) in gv.iter().enumerate() {
            let u = j + r - i;
            let v = gj as usize + r - fi as usize;
            counts[u * side + v] += 1;
        }
    }
    Ok(CorrelationGrid { order: n, counts })
}

fn first_admissible(radius: i32, filter: ShiftFilter, exclude_origin: bool) -> Option<ShiftPair> {
    (-radius..=radius)
        .flat_map(|u| (-radius..=radius).map(move |v| ShiftPair { u, v }))
        .find(|&s| filter.admits(s) && !(exclude_origin && s == ShiftPair::ORIGIN))
}

/// Largest grid entry over admitted shifts. Ties go to the smallest `u`, then
/// the smallest `v`.
pub fn max_over(
    grid: &CorrelationGrid,
    filter: ShiftFilter,
    exclude_origin: bool,
) -> Result<(u16, ShiftPair)> {
    let mut best: Option<(u16, ShiftPair)> = None;
    for (s, c) in grid.entries() {
        if !filter.admits(s) || (exclude_origin && s == ShiftPair::ORIGIN) {
            continue;
        }
        if best.map_or(true, |(b, _)| c > b) {
            best = Some((c, s));
        }
    }
    best.ok_or(Error::EmptyFilter(filter.name()))
}

/// Scratch histogram reused across pairs by one worker.
pub struct PairScratch {
    hist: Vec<u16>,
}

impl PairScratch {
    pub fn new(order: usize) -> Self {
        Self {
            hist: vec![0; 2 * order.max(1)],
        }
    }
}

/// Maximum of `Psi_{f,g}` over admitted shifts without materializing the grid.
///
/// Agrees with `max_over(&correlation_grid(f, g)?, filter, exclude_origin)`,
/// tie-breaking included. Returns `None` when no shift is admitted.
pub fn pair_max(
    f: &[u32],
    g: &[u32],
    filter: ShiftFilter,
    exclude_origin: bool,
    scratch: &mut PairScratch,
) -> Option<(u16, ShiftPair)> {
    let n = f.len();
    debug_assert_eq!(n, g.len());
    let r = n as i32 - 1;
    if scratch.hist.len() < 2 * n {
        scratch.hist.resize(2 * n, 0);
    }
    let hist = &mut scratch.hist;
    let mut best: u16 = 0;
    let mut best_at: Option<ShiftPair> = None;

    for u in -r..=r {
        if !filter.admits_u(u) {
            continue;
        }
        // i ranges over 0-based indices with 0 <= i + u < n
        let lo = (-u).max(0) as usize;
        let hi = (n as i32 - u.max(0)) as usize;
        if best_at.is_some() && hi - lo <= best as usize {
            continue;
        }
        let fs = &f[lo..hi];
        let gs = &g[(lo as i32 + u) as usize..(hi as i32 + u) as usize];
        if filter.v_zero_only() {
            if exclude_origin && u == 0 {
                continue;
            }
            let c = fs.iter().zip(gs).filter(|(a, b)| a == b).count() as u16;
            if c > best || best_at.is_none() {
                best = c;
                best_at = Some(ShiftPair { u, v: 0 });
            }
            continue;
        }
        let offset = r as u32;
        let mut row_max: u16 = 0;
        for (&a, &b) in fs.iter().zip(gs) {
            let slot = (b + offset - a) as usize;
            hist[slot] += 1;
            row_max = row_max.max(hist[slot]);
        }
        if row_max >= best {
            for (&a, &b) in fs.iter().zip(gs) {
                let slot = (b + offset - a) as usize;
                let c = hist[slot];
                if c < best {
                    continue;
                }
                let v = slot as i32 - r;
                if !filter.admits_v(u, v) || (exclude_origin && u == 0 && v == 0) {
                    continue;
                }
                let better = match best_at {
                    None => true,
                    Some(at) => c > best || (at.u == u && v < at.v),
                };
                if better {
                    best = c;
                    best_at = Some(ShiftPair { u, v });
                }
            }
        }
        for (&a, &b) in fs.iter().zip(gs) {
            hist[(b + offset - a) as usize] = 0;
        }
    }

    match best_at {
        // a positive maximum was seen; its location obeys the tie rule
        Some(at) if best > 0 => Some((best, at)),
        _ => first_admissible(r, filter, exclude_origin).map(|s| (0, s)),
    }
}

/// One pair (and shift) attaining a family maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: MemberLabel,
    pub b: MemberLabel,
    pub u: i32,
    pub v: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMaxReport {
    pub family: FamilyId,
    pub p: u64,
    pub filter: ShiftFilter,
    pub include_auto: bool,
    pub value: u32,
    /// Every pair attaining `value`, in scan order, each at its first maximal shift.
    pub witnesses: Vec<Witness>,
}

impl FamilyMaxReport {
    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }
}

/// Worker configuration for family scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    /// Whatever the ambient thread pool provides.
    #[default]
    Auto,
    Fixed(usize),
}

/// Runs family scans, optionally on a dedicated thread pool.
pub struct ScanEngine {
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Default for ScanEngine {
    fn default() -> Self {
        Self::new(Workers::Auto)
    }
}

impl ScanEngine {
    pub fn new(workers: Workers) -> Self {
        #[cfg(feature = "parallel")]
        {
            let pool = match workers {
                Workers::Auto => None,
                Workers::Fixed(k) => Some(
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(k.max(1))
                        .build()
                        .expect("thread pool"),
                ),
            };
            Self { pool }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = workers;
            Self {}
        }
    }

    /// Exhaustive maximum over all admitted pairs and shifts of a family.
    ///
    /// Distinct members are scanned as unordered pairs `(a, b)`, `a < b` in
    /// canonical order. With `include_auto`, each member is also paired with
    /// itself, excluding the zero shift.
    pub fn family_max(
        &self,
        ctx: &PrimeContext,
        id: FamilyId,
        filter: ShiftFilter,
        include_auto: bool,
    ) -> Result<FamilyMaxReport> {
        let members = enumerate_family(ctx, id)?;
        let (value, witnesses) = self.scan_members(&members, filter, include_auto)?.ok_or_else(|| {
            Error::Inapplicable {
                what: format!(
                    "{id} scan with filter {filter} (include_auto={include_auto}): no admissible pair"
                ),
                p: ctx.p,
            }
        })?;
        Ok(FamilyMaxReport {
            family: id,
            p: ctx.p,
            filter,
            include_auto,
            value,
            witnesses,
        })
    }

    /// The scan itself, over an explicit member list.
    pub fn scan_members(
        &self,
        members: &[FamilyMember],
        filter: ShiftFilter,
        include_auto: bool,
    ) -> Result<Option<(u32, Vec<Witness>)>> {
        let m = members.len();
        let mut pairs = Vec::with_capacity(m * (m + 1) / 2);
        for a in 0..m {
            if include_auto {
                pairs.push((a, a));
            }
            pairs.extend((a + 1..m).map(|b| (a, b)));
        }
        let order = members.first().map_or(1, |mm| mm.permutation.order());
        let eval = |scratch: &mut PairScratch, &(a, b): &(usize, usize)| {
            pair_max(
                members[a].permutation.values(),
                members[b].permutation.values(),
                filter,
                a == b,
                scratch,
            )
        };
        let results = self.map_pairs(&pairs, order, eval);

        let mut best: Option<u32> = None;
        let mut witnesses = Vec::new();
        for (&(a, b), res) in pairs.iter().zip(results) {
            let Some((c, s)) = res else { continue };
            let c = c as u32;
            if best.map_or(true, |bv| c > bv) {
                best = Some(c);
                witnesses.clear();
            }
            if best == Some(c) {
                witnesses.push(Witness {
                    a: members[a].label,
                    b: members[b].label,
                    u: s.u,
                    v: s.v,
                });
            }
        }
        Ok(best.map(|v| (v, witnesses)))
    }

    #[cfg(feature = "parallel")]
    fn map_pairs<F>(
        &self,
        pairs: &[(usize, usize)],
        order: usize,
        eval: F,
    ) -> Vec<Option<(u16, ShiftPair)>>
    where
        F: Fn(&mut PairScratch, &(usize, usize)) -> Option<(u16, ShiftPair)> + Sync,
    {
        use rayon::prelude::*;
        let run = || {
            pairs
                .par_iter()
                .map_init(|| PairScratch::new(order), |scratch, pair| eval(scratch, pair))
                .collect()
        };
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn map_pairs<F>(
        &self,
        pairs: &[(usize, usize)],
        order: usize,
        eval: F,
    ) -> Vec<Option<(u16, ShiftPair)>>
    where
        F: Fn(&mut PairScratch, &(usize, usize)) -> Option<(u16, ShiftPair)>,
    {
        let mut scratch = PairScratch::new(order);
        pairs.iter().map(|pair| eval(&mut scratch, pair)).collect()
    }
}

/// [`ScanEngine::family_max`] on the ambient pool.
pub fn family_max(
    ctx: &PrimeContext,
    id: FamilyId,
    filter: ShiftFilter,
    include_auto: bool,
) -> Result<FamilyMaxReport> {
    ScanEngine::default().family_max(ctx, id, filter, include_auto)
}

/// Same engine as [`family_max`]; the entry point theorem checks use with a
/// restricting filter.
pub fn restricted_family_max(
    ctx: &PrimeContext,
    id: FamilyId,
    filter: ShiftFilter,
    include_auto: bool,
) -> Result<FamilyMaxReport> {
    family_max(ctx, id, filter, include_auto)
}
