//! Batch reports (family tables, bound tables, theorem verdicts, grids) and
//! their CSV / markdown / JSON renderings.
//!
//! CSV outputs start with a `#schema=1` comment line. Every table report can
//! be parsed back from its CSV form.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::arrays::{
    fixed_points, is_costas_difference_triangle, is_costas_grid, is_golomb_ruler, FamilyId,
    MemberLabel, Permutation,
};
use crate::bounds::{
    bound_ard_pp, bound_dg_wp_v0, bound_gw_wp_vnz, bound_thm1_wpel, bound_thm2_pp_u0_vnz,
    bound_thm4_pwp_v0, sidon_bound, table4_nontrivial, table4_value, verify_theorem_with,
    BoundVerdict, PowerCase, Relation, ScanFn, TheoremId, OPEN_CASES,
};
use crate::error::{Error, Result};
use crate::numthy::PrimeContext;
use crate::xcorr::{max_over, CorrelationGrid, FamilyMaxReport, ShiftFilter, ShiftPair, Witness};

pub const SCHEMA_LINE: &str = "#schema=1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Csv,
    #[default]
    Markdown,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }
}

/// Prints bounds as integers when they are integral, else to four decimals.
pub fn fmt_bound(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{x:.0}")
    } else {
        format!("{x:.4}")
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn witness_field(w: &Witness) -> String {
    format!("{};{};{};{}", w.a, w.b, w.u, w.v)
}

fn parse_witness(s: &str) -> Result<Witness> {
    let parts: Vec<&str> = s.split(';').collect();
    let [a, b, u, v] = parts[..] else {
        return Err(Error::Parse(format!("bad witness {s:?}")));
    };
    let int = |x: &str| {
        x.parse::<i32>()
            .map_err(|_| Error::Parse(format!("bad shift in witness {s:?}")))
    };
    Ok(Witness {
        a: a.parse::<MemberLabel>()?,
        b: b.parse::<MemberLabel>()?,
        u: int(u)?,
        v: int(v)?,
    })
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    let mut buf = Vec::new();
    buf.extend_from_slice(SCHEMA_LINE.as_bytes());
    buf.push(b'\n');
    csv::Writer::from_writer(buf)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

// ---------------------------------------------------------------------------
// family maxima tables

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub value: u32,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: u64,
    pub safe_prime: bool,
    /// One cell per requested family; `None` where the family is undefined for `p`.
    pub cells: Vec<Option<TableCell>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub families: Vec<FamilyId>,
    pub filter: ShiftFilter,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    /// The value for `family` at prime `p`, if present.
    pub fn value(&self, p: u64, family: FamilyId) -> Option<u32> {
        let col = self.families.iter().position(|&f| f == family)?;
        let row = self.rows.iter().find(|r| r.p == p)?;
        row.cells[col].as_ref().map(|c| c.value)
    }
}

/// Family maxima per prime. Each family uses its own `include_auto` default.
pub fn build_table(
    primes: &[u64],
    families: &[FamilyId],
    filter: ShiftFilter,
    scan: &ScanFn<'_>,
    mut progress: impl FnMut(u64),
) -> Result<TableReport> {
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        progress(p);
        let ctx = PrimeContext::new(p)?;
        let mut cells = Vec::with_capacity(families.len());
        for &id in families {
            let cell = match scan(&ctx, id, filter, id.default_include_auto()) {
                Ok(r) => Some(TableCell {
                    value: r.value,
                    witness: r.witnesses.first().cloned(),
                }),
                Err(Error::Inapplicable { .. }) => None,
                Err(e) => return Err(e),
            };
            cells.push(cell);
        }
        rows.push(TableRow {
            p,
            safe_prime: ctx.is_safe_prime,
            cells,
        });
    }
    Ok(TableReport {
        families: families.to_vec(),
        filter,
        rows,
    })
}

pub fn render_table(report: &TableReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            let mut header = vec!["p".to_string(), "safe_prime".to_string()];
            header.extend(report.families.iter().map(|f| f.name().to_string()));
            header.extend(report.families.iter().map(|f| format!("{f}_witness")));
            header.push("filter".into());
            w.write_record(&header).expect("in-memory write");
            for row in &report.rows {
                let mut rec = vec![row.p.to_string(), (row.safe_prime as u8).to_string()];
                rec.extend(
                    row.cells
                        .iter()
                        .map(|c| c.as_ref().map_or(String::new(), |c| c.value.to_string())),
                );
                rec.extend(row.cells.iter().map(|c| {
                    c.as_ref()
                        .and_then(|c| c.witness.as_ref())
                        .map_or(String::new(), witness_field)
                }));
                rec.push(report.filter.name().to_string());
                w.write_record(&rec).expect("in-memory write");
            }
            finish_csv(w)
        }
        OutputFormat::Markdown => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "<!-- maximal cross-correlation, filter {}; * marks safe primes -->",
                report.filter
            );
            s.push_str("| p |");
            for f in &report.families {
                let _ = write!(s, " C({f}) |");
            }
            s.push_str("\n|---|");
            for _ in &report.families {
                s.push_str("---|");
            }
            s.push('\n');
            for row in &report.rows {
                let mark = if row.safe_prime { "*" } else { "" };
                let _ = write!(s, "| {}{mark} |", row.p);
                for c in &row.cells {
                    match c {
                        Some(c) => {
                            let _ = write!(s, " {} |", c.value);
                        }
                        None => s.push_str(" - |"),
                    }
                }
                s.push('\n');
            }
            s
        }
    }
}

/// Inverse of the CSV rendering of [`render_table`].
pub fn parse_table_csv(text: &str) -> Result<TableReport> {
    let mut rdr = csv_reader(text);
    let header = rdr.headers().map_err(csv_err)?.clone();
    let cols = header.len();
    if cols < 3 || (cols - 3) % 2 != 0 {
        return Err(Error::Parse("unexpected table header".into()));
    }
    let k = (cols - 3) / 2;
    let families = header
        .iter()
        .skip(2)
        .take(k)
        .map(FamilyId::from_str)
        .collect::<Result<Vec<_>>>()?;
    let mut filter = ShiftFilter::All;
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let p = rec[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime {:?}", &rec[0])))?;
        let safe_prime = &rec[1] == "1";
        let mut cells = Vec::with_capacity(k);
        for c in 0..k {
            let raw = &rec[2 + c];
            if raw.is_empty() {
                cells.push(None);
                continue;
            }
            let value = raw
                .parse()
                .map_err(|_| Error::Parse(format!("bad value {raw:?}")))?;
            let wraw = &rec[2 + k + c];
            let witness = if wraw.is_empty() {
                None
            } else {
                Some(parse_witness(wraw)?)
            };
            cells.push(Some(TableCell { value, witness }));
        }
        filter = rec[cols - 1].parse()?;
        rows.push(TableRow {
            p,
            safe_prime,
            cells,
        });
    }
    Ok(TableReport {
        families,
        filter,
        rows,
    })
}

// ---------------------------------------------------------------------------
// closed-form bounds

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub p: u64,
    pub safe_prime: bool,
    pub t: u64,
    pub least_alpha: u64,
    pub largest_alpha: u64,
    pub dg_wp_v0: u64,
    pub gw_wp_vnz: u64,
    pub thm1_wpel_least: f64,
    pub thm1_wpel_largest: f64,
    pub ard_pp_00: u64,
    pub ard_pp_unz_v0: u64,
    pub thm2_pp_u0_vnz: f64,
    pub thm4_pwp_v0: f64,
    pub thm4_relation: Relation,
    pub sidon: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table4Row {
    pub p: u64,
    pub alpha: u64,
    /// `floor(4 p log_p alpha)` at the least primitive root.
    pub bound: u64,
}

pub fn bounds_row(ctx: &PrimeContext) -> Result<BoundsRow> {
    let (thm4, rel) = bound_thm4_pwp_v0(ctx);
    let (least, largest) = (ctx.least_primitive_root(), ctx.largest_primitive_root());
    Ok(BoundsRow {
        p: ctx.p,
        safe_prime: ctx.is_safe_prime,
        t: ctx.t,
        least_alpha: least,
        largest_alpha: largest,
        dg_wp_v0: bound_dg_wp_v0(ctx),
        gw_wp_vnz: bound_gw_wp_vnz(ctx),
        thm1_wpel_least: bound_thm1_wpel(ctx, least)?,
        thm1_wpel_largest: bound_thm1_wpel(ctx, largest)?,
        ard_pp_00: bound_ard_pp(ctx, PowerCase::BothZero),
        ard_pp_unz_v0: bound_ard_pp(ctx, PowerCase::UNonzeroVZero),
        thm2_pp_u0_vnz: bound_thm2_pp_u0_vnz(ctx),
        thm4_pwp_v0: thm4,
        thm4_relation: rel,
        sidon: sidon_bound(ctx.n),
    })
}

/// Rows of the floored W_p^el bound at the least primitive root, keeping
/// only primes where it is nontrivial. The bound needs `p >= 7`.
pub fn table4_rows(primes: &[u64]) -> Result<Vec<Table4Row>> {
    let mut rows = Vec::new();
    for &p in primes.iter().filter(|&&p| p >= 7) {
        let ctx = PrimeContext::new(p)?;
        let alpha = ctx.least_primitive_root();
        let bound = table4_value(&ctx, alpha)?;
        if table4_nontrivial(&ctx, bound) {
            rows.push(Table4Row { p, alpha, bound });
        }
    }
    Ok(rows)
}

pub fn render_bounds(rows: &[BoundsRow], format: OutputFormat) -> String {
    const COLS: [&str; 15] = [
        "p",
        "safe_prime",
        "t",
        "least_alpha",
        "largest_alpha",
        "DG_Wp_V0",
        "GW_Wp_VNZ",
        "THM1_Wpel_least",
        "THM1_Wpel_largest",
        "ARD_Pp_00",
        "ARD_Pp_UNZ_V0",
        "THM2_Pp_U0_VNZ",
        "THM4_PWp_V0",
        "THM4_relation",
        "sidon",
    ];
    let fields = |r: &BoundsRow| -> Vec<String> {
        vec![
            r.p.to_string(),
            (r.safe_prime as u8).to_string(),
            r.t.to_string(),
            r.least_alpha.to_string(),
            r.largest_alpha.to_string(),
            r.dg_wp_v0.to_string(),
            r.gw_wp_vnz.to_string(),
            fmt_bound(r.thm1_wpel_least),
            fmt_bound(r.thm1_wpel_largest),
            r.ard_pp_00.to_string(),
            r.ard_pp_unz_v0.to_string(),
            fmt_bound(r.thm2_pp_u0_vnz),
            fmt_bound(r.thm4_pwp_v0),
            r.thm4_relation.symbol().to_string(),
            fmt_bound(r.sidon),
        ]
    };
    match format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(COLS).expect("in-memory write");
            for r in rows {
                w.write_record(fields(r)).expect("in-memory write");
            }
            finish_csv(w)
        }
        OutputFormat::Markdown => markdown(&COLS, rows.iter().map(fields)),
    }
}

pub fn render_table4(rows: &[Table4Row], format: OutputFormat) -> String {
    const COLS: [&str; 3] = ["p", "alpha", "bound"];
    let fields = |r: &Table4Row| vec![r.p.to_string(), r.alpha.to_string(), r.bound.to_string()];
    match format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(COLS).expect("in-memory write");
            for r in rows {
                w.write_record(fields(r)).expect("in-memory write");
            }
            finish_csv(w)
        }
        OutputFormat::Markdown => {
            let mut s = String::from(
                "<!-- floor(4 p log_p alpha) at the least primitive root; rows where it is <= p-2 -->\n",
            );
            s.push_str(&markdown(&COLS, rows.iter().map(fields)));
            s
        }
    }
}

pub fn parse_table4_csv(text: &str) -> Result<Vec<Table4Row>> {
    let mut rdr = csv_reader(text);
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let num = |i: usize| {
            rec[i]
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad number {:?}", &rec[i])))
        };
        rows.push(Table4Row {
            p: num(0)?,
            alpha: num(1)?,
            bound: num(2)?,
        });
    }
    Ok(rows)
}

fn markdown(cols: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut s = format!("| {} |\n", cols.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(cols.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | "));
    }
    s
}

// ---------------------------------------------------------------------------
// theorem verdicts

/// Exhaustive maximum for a case with no claimed bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpenCase {
    pub family: FamilyId,
    pub filter: ShiftFilter,
    pub empirical_value: u32,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeVerdicts {
    pub p: u64,
    pub safe_prime: bool,
    pub verdicts: Vec<BoundVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub open_cases: Vec<OpenCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub all_hold: bool,
    pub primes: Vec<PrimeVerdicts>,
}

/// Every applicable theorem at every prime, optionally with the open cases.
pub fn build_verify(
    primes: &[u64],
    theorems: &[TheoremId],
    open_cases: bool,
    scan: &ScanFn<'_>,
    mut progress: impl FnMut(u64),
) -> Result<VerifyReport> {
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        progress(p);
        let ctx = PrimeContext::new(p)?;
        let verdicts = theorems
            .iter()
            .filter(|t| t.is_applicable(&ctx))
            .map(|&t| verify_theorem_with(&ctx, t, scan))
            .collect::<Result<Vec<_>>>()?;
        let open = if open_cases {
            OPEN_CASES
                .iter()
                .map(|&(family, filter)| {
                    scan(&ctx, family, filter, family.default_include_auto()).map(
                        |r: FamilyMaxReport| OpenCase {
                            family,
                            filter,
                            empirical_value: r.value,
                            witness: r.witnesses.first().cloned(),
                        },
                    )
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        out.push(PrimeVerdicts {
            p,
            safe_prime: ctx.is_safe_prime,
            verdicts,
            open_cases: open,
        });
    }
    Ok(VerifyReport {
        all_hold: out.iter().flat_map(|pv| &pv.verdicts).all(|v| v.holds),
        primes: out,
    })
}

fn verdict_line(v: &BoundVerdict) -> String {
    let rel = match v.relation_claimed {
        Relation::AtMost => "AT-MOST",
        Relation::Equal => "EQUAL",
    };
    let status = if v.holds { "OK" } else { "FAIL" };
    let mut s = format!(
        "bound {}, empirical {}, {rel}, {status}",
        fmt_bound(v.bound_value),
        v.empirical_value
    );
    if v.relation_claimed == Relation::Equal || !v.holds {
        if let Some(w) = &v.witness {
            let _ = write!(s, " (witness {} vs {} at u={}, v={})", w.a, w.b, w.u, w.v);
        }
    }
    s
}

pub fn render_verify(report: &VerifyReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(["p", "theorem", "bound", "empirical", "relation", "holds", "witness"])
                .expect("in-memory write");
            for pv in &report.primes {
                for v in &pv.verdicts {
                    w.write_record([
                        pv.p.to_string(),
                        v.theorem_id.name().to_string(),
                        format!("{}", v.bound_value),
                        v.empirical_value.to_string(),
                        v.relation_claimed.symbol().to_string(),
                        (v.holds as u8).to_string(),
                        v.witness.as_ref().map_or(String::new(), witness_field),
                    ])
                    .expect("in-memory write");
                }
                for oc in &pv.open_cases {
                    w.write_record([
                        pv.p.to_string(),
                        format!("OPEN_{}_{}", oc.family, oc.filter),
                        String::new(),
                        oc.empirical_value.to_string(),
                        String::new(),
                        String::new(),
                        oc.witness.as_ref().map_or(String::new(), witness_field),
                    ])
                    .expect("in-memory write");
                }
            }
            finish_csv(w)
        }
        OutputFormat::Markdown => {
            let mut s = String::new();
            for pv in &report.primes {
                let safe = if pv.safe_prime { " (safe)" } else { "" };
                let _ = writeln!(s, "p={}{safe}", pv.p);
                for v in &pv.verdicts {
                    let _ = writeln!(s, "  {:<15} {}", v.theorem_id.name(), verdict_line(v));
                }
                for oc in &pv.open_cases {
                    let _ = writeln!(
                        s,
                        "  {:<15} empirical {}, no claimed bound",
                        format!("{}/{}", oc.family, oc.filter),
                        oc.empirical_value
                    );
                }
            }
            let total: usize = report.primes.iter().map(|pv| pv.verdicts.len()).sum();
            let failed: usize = report
                .primes
                .iter()
                .flat_map(|pv| &pv.verdicts)
                .filter(|v| !v.holds)
                .count();
            let _ = writeln!(
                s,
                "{} verdicts, {} failed: {}",
                total,
                failed,
                if report.all_hold { "ALL HOLD" } else { "VIOLATIONS FOUND" }
            );
            s
        }
    }
}

/// Parses the CSV rendering of [`render_verify`] back into verdict rows.
/// Open-case rows are skipped.
pub fn parse_verify_csv(text: &str) -> Result<Vec<BoundVerdict>> {
    let mut rdr = csv_reader(text);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        if rec[1].starts_with("OPEN_") {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("bad {what} in verdict row"));
        out.push(BoundVerdict {
            p: rec[0].parse().map_err(|_| bad("prime"))?,
            theorem_id: rec[1].parse()?,
            bound_value: rec[2].parse().map_err(|_| bad("bound"))?,
            empirical_value: rec[3].parse().map_err(|_| bad("empirical"))?,
            relation_claimed: match &rec[4] {
                "<=" => Relation::AtMost,
                "=" => Relation::Equal,
                _ => return Err(bad("relation")),
            },
            holds: &rec[5] == "1",
            witness: if rec[6].is_empty() {
                None
            } else {
                Some(parse_witness(&rec[6])?)
            },
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// grids and single-permutation checks

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct GridJson<'a> {
    a: &'a str,
    b: &'a str,
    order: usize,
    radius: i32,
    /// `rows[k][l]` is `Psi(u, v)` with `v = k - radius`, `u = l - radius`.
    rows: Vec<Vec<u16>>,
    max_off_origin: Option<u16>,
}

pub fn render_grid(grid: &CorrelationGrid, a: &str, b: &str, format: OutputFormat) -> String {
    let r = grid.radius();
    let off_origin = max_over(grid, ShiftFilter::ExcludeOrigin, false).ok().map(|(c, _)| c);
    match format {
        OutputFormat::Json => {
            let rows = (-r..=r)
                .map(|v| (-r..=r).map(|u| grid.get(ShiftPair { u, v })).collect())
                .collect();
            to_json(&GridJson {
                a,
                b,
                order: grid.order(),
                radius: r,
                rows,
                max_off_origin: off_origin,
            })
        }
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(["u", "v", "count"]).expect("in-memory write");
            for (s, c) in grid.entries() {
                w.write_record([s.u.to_string(), s.v.to_string(), c.to_string()])
                    .expect("in-memory write");
            }
            finish_csv(w)
        }
        OutputFormat::Markdown => {
            let width = grid.order().to_string().len().max(r.to_string().len() + 1) + 2;
            let mut s = String::new();
            let _ = writeln!(s, "# Psi(u,v) of A = {a} against B = {b}, order {}", grid.order());
            let _ = writeln!(
                s,
                "# columns: u = {}..{} left to right; rows: v = {}..{} top to bottom; [x] marks (0,0)",
                -r, r, -r, r
            );
            let _ = write!(s, "{:>5} ", "v\\u");
            for u in -r..=r {
                let _ = write!(s, "{u:>width$}");
            }
            s.push('\n');
            for v in -r..=r {
                let _ = write!(s, "{v:>5} ");
                for u in -r..=r {
                    let c = grid.get(ShiftPair { u, v });
                    let cell = if u == 0 && v == 0 {
                        format!("[{c}]")
                    } else {
                        c.to_string()
                    };
                    let _ = write!(s, "{cell:>width$}");
                }
                s.push('\n');
            }
            if let Some(m) = off_origin {
                let _ = writeln!(s, "# max off (0,0): {m}; value at (0,0): {}", grid.get(ShiftPair::ORIGIN));
            }
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostasCheck {
    pub permutation: Permutation,
    pub order: usize,
    pub costas_by_grid: bool,
    pub costas_by_difference_triangle: bool,
    pub checkers_agree: bool,
    pub fixed_points: Vec<u32>,
    pub fixed_points_golomb: bool,
    pub sidon_bound: f64,
    pub fixed_points_below_sidon_bound: bool,
}

impl CostasCheck {
    pub fn is_costas(&self) -> bool {
        self.costas_by_grid && self.costas_by_difference_triangle
    }
}

pub fn costas_check(f: &Permutation) -> CostasCheck {
    let by_grid = is_costas_grid(f);
    let by_triangle = is_costas_difference_triangle(f);
    let fixed = fixed_points(f);
    let marks: Vec<i64> = fixed.iter().map(|&x| x as i64).collect();
    let sidon = sidon_bound(f.order() as u64);
    CostasCheck {
        permutation: f.clone(),
        order: f.order(),
        costas_by_grid: by_grid,
        costas_by_difference_triangle: by_triangle,
        checkers_agree: by_grid == by_triangle,
        fixed_points_golomb: is_golomb_ruler(&marks),
        fixed_points_below_sidon_bound: (fixed.len() as f64) < sidon,
        fixed_points: fixed,
        sidon_bound: sidon,
    }
}

pub fn render_costas_check(check: &CostasCheck, format: OutputFormat) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    match format {
        OutputFormat::Json => to_json(check),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record([
                "permutation",
                "order",
                "costas_grid",
                "costas_triangle",
                "agree",
                "fixed_points",
                "golomb",
                "below_sidon",
            ])
            .expect("in-memory write");
            let fixed: Vec<String> = check.fixed_points.iter().map(u32::to_string).collect();
            w.write_record([
                check.permutation.to_string(),
                check.order.to_string(),
                (check.costas_by_grid as u8).to_string(),
                (check.costas_by_difference_triangle as u8).to_string(),
                (check.checkers_agree as u8).to_string(),
                fixed.join(" "),
                (check.fixed_points_golomb as u8).to_string(),
                (check.fixed_points_below_sidon_bound as u8).to_string(),
            ])
            .expect("in-memory write");
            finish_csv(w)
        }
        OutputFormat::Markdown => {
            let fixed: Vec<String> = check.fixed_points.iter().map(u32::to_string).collect();
            let mut s = String::new();
            let _ = writeln!(s, "permutation: {}", check.permutation);
            let _ = writeln!(s, "order: {}", check.order);
            let _ = writeln!(s, "auto-correlation check: {}", yes(check.costas_by_grid));
            let _ = writeln!(
                s,
                "difference-triangle check: {}",
                yes(check.costas_by_difference_triangle)
            );
            let _ = writeln!(s, "checkers agree: {}", yes(check.checkers_agree));
            let _ = writeln!(s, "fixed points: [{}]", fixed.join(", "));
            let _ = writeln!(s, "fixed points form a Golomb ruler: {}", yes(check.fixed_points_golomb));
            let _ = writeln!(
                s,
                "fixed-point count {} < Sidon bound {:.4}: {}",
                check.fixed_points.len(),
                check.sidon_bound,
                yes(check.fixed_points_below_sidon_bound)
            );
            let _ = writeln!(s, "Costas: {}", yes(check.is_costas()));
            s
        }
    }
}
