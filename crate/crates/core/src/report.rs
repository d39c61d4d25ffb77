//! Machine-readable reports, batch scans and the minimal-`t` table.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aut::{evaluate, family_check, minus_one_qr, AutVariant, Branch, Evaluation, FamilyCheck, Matrix2, Mode, Shortcut};
use crate::cones::{ConeDescription, FloppingWall};
use crate::error::{domain, Error, Result};
use crate::lattice::{NSClass, Params};

/// The four conditions as booleans plus the branch of (iv).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFlags {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: Branch,
}

/// One classified instance. Possibly large integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub n: u64,
    pub t: u64,
    pub aut: String,
    pub shortcut: Option<Shortcut>,
    pub matrix: Option<Matrix2>,
    pub nu: Option<NSClass>,
    pub nu_square: Option<u64>,
    pub nu_divisibility: Option<u64>,
    #[serde(with = "crate::bigstr::option")]
    pub z: Option<BigInt>,
    #[serde(with = "crate::bigstr::option")]
    pub w: Option<BigInt>,
    pub conditions: Option<ConditionFlags>,
    pub mov: ConeDescription,
    pub nef: ConeDescription,
    pub flopping_walls: Vec<FloppingWall>,
}

impl Analysis {
    pub fn is_involution(&self) -> bool {
        self.matrix.is_some()
    }
}

impl From<Evaluation> for Analysis {
    fn from(e: Evaluation) -> Self {
        let inv = e.result.variant.involution();
        let small = |v: &BigInt| v.to_u64().expect("invariant square and divisibility are at most 2(n-1)");
        Self {
            n: e.params.n(),
            t: e.params.t(),
            aut: e.result.variant.label().to_string(),
            shortcut: e.result.shortcut,
            matrix: inv.map(|d| d.matrix.clone()),
            nu: inv.map(|d| d.nu.clone()),
            nu_square: inv.map(|d| small(&d.nu_square)),
            nu_divisibility: inv.map(|d| small(&d.nu_divisibility)),
            z: inv.map(|d| d.z.clone()),
            w: inv.map(|d| d.w.clone()),
            conditions: e.conditions.as_ref().map(|c| ConditionFlags {
                i: c.cond_i.holds,
                ii: c.cond_ii.holds,
                iii: c.cond_iii.holds,
                iv: c.cond_iv,
            }),
            mov: e.cones.movable.cone,
            nef: e.cones.nef,
            flopping_walls: e.cones.walls,
        }
    }
}

pub fn analyze(p: &Params, mode: Mode) -> Result<Analysis> {
    Ok(evaluate(p, mode)?.into())
}

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start {k} workers: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Analyses `t_min..=t_max` for fixed `n`, in ascending `t`. With `threads`
/// the work fans out over a pool of that size; output order is unchanged.
pub fn scan(n: u64, t_min: u64, t_max: u64, mode: Mode, threads: Option<usize>) -> Result<Vec<Analysis>> {
    if t_min < 1 || t_min > t_max {
        return domain(format!("need 1 <= t_min <= t_max, got {t_min}..{t_max}"));
    }
    Params::new(n, t_min)?;
    let run = |t: u64| analyze(&Params::new(n, t)?, mode);
    match threads {
        None => (t_min..=t_max).map(run).collect(),
        Some(_) => with_pool(threads, || (t_min..=t_max).into_par_iter().map(run).collect())?,
    }
}

/// A cell of the minimal-`t` table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableCell {
    Found(u64),
    /// No instance with `t` up to the limit.
    NotFound(u64),
    /// Excluded for every `t`: `-1` is not a square modulo `n-1`.
    Impossible,
}

impl fmt::Display for TableCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableCell::Found(t) => write!(f, "{t}"),
            TableCell::NotFound(limit) => write!(f, ">{limit}"),
            TableCell::Impossible => f.write_str("/"),
        }
    }
}

/// Minimal `t` with an involution whose invariant class has square 2, and
/// square `2(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub min_t_sq2: TableCell,
    pub min_t_sq2n2: TableCell,
    pub scan_limit: u64,
}

/// Involutions force `t >= 2n-2`, so each row starts there.
pub fn table_row(n: u64, t_max: u64) -> Result<TableRow> {
    let two_n2 = 2 * (n - 1);
    let mut sq2 = None;
    let mut sq2n2 = if minus_one_qr(n - 1) { None } else { Some(TableCell::Impossible) };
    let mut t = two_n2.max(2);
    while t <= t_max && (sq2.is_none() || sq2n2.is_none()) {
        let e = evaluate(&Params::new(n, t)?, Mode::Fast)?;
        if let AutVariant::NonNaturalInvolution(d) = &e.result.variant {
            if d.nu_square == BigInt::from(2) && sq2.is_none() {
                sq2 = Some(TableCell::Found(t));
            }
            if d.nu_square == BigInt::from(two_n2) && sq2n2.is_none() {
                sq2n2 = Some(TableCell::Found(t));
            }
        }
        t += 1;
    }
    Ok(TableRow {
        n,
        min_t_sq2: sq2.unwrap_or(TableCell::NotFound(t_max)),
        min_t_sq2n2: sq2n2.unwrap_or(TableCell::NotFound(t_max)),
        scan_limit: t_max,
    })
}

pub fn table(n_min: u64, n_max: u64, t_max: u64, threads: Option<usize>) -> Result<Vec<TableRow>> {
    if n_min < 2 || n_min > n_max {
        return domain(format!("need 2 <= n_min <= n_max, got {n_min}..{n_max}"));
    }
    match threads {
        None => (n_min..=n_max).map(|n| table_row(n, t_max)).collect(),
        Some(_) => with_pool(threads, || {
            (n_min..=n_max).into_par_iter().map(|n| table_row(n, t_max)).collect()
        })?,
    }
}

pub const TABLE_CSV_HEADER: &str = "n,min_t_sq2,min_t_sq2n2";

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.n, r.min_t_sq2, r.min_t_sq2n2);
    }
    out
}

pub fn family(n: u64, k_min: u64, k_max: u64, mode: Mode) -> Result<Vec<FamilyCheck>> {
    if k_min < 1 || k_min > k_max {
        return domain(format!("need 1 <= k_min <= k_max, got {k_min}..{k_max}"));
    }
    (k_min..=k_max).map(|k| family_check(n, k, mode)).collect()
}

/// Multi-line plain-text rendering of an analysis.
pub fn render_text(a: &Analysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}, t = {} (H^2 = {})", a.n, a.t, 2 * a.t);
    let _ = write!(s, "aut: {}", a.aut);
    match a.shortcut {
        Some(Shortcut::TEquals1) => s.push_str(" (t = 1)"),
        Some(Shortcut::SmallDegree) => s.push_str(" (2 <= t <= 2n-3)"),
        None => {}
    }
    s.push('\n');
    if let Some(c) = &a.conditions {
        let iv = match c.iv {
            Branch::FirstEquation => "(n-1)X^2 - tY^2 = -1",
            Branch::SecondEquation => "X^2 - t(n-1)Y^2 = -1",
            Branch::Neither => "none",
        };
        let _ = writeln!(s, "conditions: i={} ii={} iii={} iv={}", c.i, c.ii, c.iii, iv);
    }
    if let (Some(m), Some(nu)) = (&a.matrix, &a.nu) {
        let _ = writeln!(s, "matrix: {m}");
        let _ = writeln!(
            s,
            "invariant class: {nu}, square {}, divisibility {}",
            a.nu_square.unwrap_or_default(),
            a.nu_divisibility.unwrap_or_default()
        );
        if let (Some(z), Some(w)) = (&a.z, &a.w) {
            let _ = writeln!(s, "(z, w) = ({z}, {w})");
        }
    }
    let cone = |c: &ConeDescription| format!("<{}, {}> [{:?}]", c.ray_low(), c.ray_high(), c.case_tag());
    let _ = writeln!(s, "movable cone: {}", cone(&a.mov));
    let _ = writeln!(s, "nef cone: {}", cone(&a.nef));
    if a.flopping_walls.is_empty() {
        s.push_str("flopping walls: none\n");
    } else {
        s.push_str("flopping walls:\n");
        for w in &a.flopping_walls {
            let _ = writeln!(
                s,
                "  rho={} alpha={} ray {} from ({}, {})",
                w.rho,
                w.alpha,
                w.ray,
                w.witness.x(),
                w.witness.y()
            );
        }
    }
    s
}
