//! Exhaustive desk-scale checks of the closed forms: formula against oracle,
//! the pointwise relations between the three games, the two properties that
//! characterise a Sprague-Grundy function, plus Grundy tables and a census of
//! positions where the three games disagree.
//!
//! Every sweep covers unordered pairs (coprime or not) with both entries at
//! most `max_entry` and reports findings sorted by canonical position.

use std::fmt;
use std::io;

use serde::{Serialize, Serializer};

use crate::cf::ContinuedFraction;
use crate::error::Result;
use crate::formula::{self, grundy_formula};
use crate::game::{is_terminal, legal_moves, Position, Variant};
use crate::oracle::{Method, Oracle};

/// Formula and oracle disagree at `position`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub variant: Variant,
    pub position: Position,
    pub cf: Option<ContinuedFraction>,
    pub index_i: Option<usize>,
    pub index_j: Option<usize>,
    pub formula_value: u64,
    pub oracle_value: u64,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: formula {} != oracle {}",
            self.variant, self.position, self.formula_value, self.oracle_value
        )?;
        if let Some(cf) = &self.cf {
            write!(f, " cf {cf} I={:?} J={:?}", self.index_i, self.index_j)?;
        }
        Ok(())
    }
}

/// Positions swept for `variant`: canonical pairs, with the zero-entry
/// terminals included for Euclid.
fn sweep(variant: Variant, max_entry: u64) -> impl Iterator<Item = Position> {
    let start = if variant == Variant::Euclid { 0 } else { 1 };
    (1..=max_entry).flat_map(move |b| (start..=b).map(move |a| Position::new(a, b)))
}

/// Compares the closed form with the oracle on every valid position with
/// entries at most `max_entry`. Empty when they agree everywhere.
pub fn verify_range(
    variant: Variant,
    max_entry: u64,
    oracle_bound: u64,
) -> Result<Vec<Discrepancy>> {
    let mut oracle = Oracle::with_bound(variant, oracle_bound);
    let mut found = Vec::new();
    for p in sweep(variant, max_entry) {
        let oracle_value = oracle.grundy(p)?;
        let report = grundy_formula(variant, p)?;
        if report.value != oracle_value {
            found.push(Discrepancy {
                variant,
                position: p,
                cf: (p.a > 0)
                    .then(|| ContinuedFraction::expand(p.a, p.b))
                    .transpose()?,
                index_i: report.index_i,
                index_j: report.index_j,
                formula_value: report.value,
                oracle_value,
            });
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// M-Euclid against Euclid relation fails.
    RelationEuclid,
    /// M-Euclid against Grossman relation fails.
    RelationGrossman,
    /// Some option has the same Grundy value as the position.
    ValueShared,
    /// Some smaller value is reached by no option.
    ValueUnreachable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub variant: Variant,
    pub position: Position,
    pub cf: ContinuedFraction,
    pub index_i: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} {} {} cf {} I={}: {}",
            self.kind, self.variant, self.position, self.cf, self.index_i, self.detail
        )
    }
}

/// Which of the exception conditions hold for an expansion `[a0..an]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ExceptionFlags {
    /// `a0 = ... = a(n-1) <= an`, `n >= 1`: M-Euclid differs from Euclid.
    pub m_vs_e: bool,
    /// `a0 = ... = a(n-1) < an`, `n >= 1`: M-Euclid differs from Grossman.
    pub m_vs_g: bool,
    /// `a0 = ... = an`: Grossman differs from Euclid.
    pub g_vs_e: bool,
}

impl ExceptionFlags {
    pub fn from_cf(cf: &ContinuedFraction) -> Self {
        let qs = cf.quotients();
        let n = cf.degree();
        let head_constant = n >= 1 && cf.leading_run() >= n;
        ExceptionFlags {
            m_vs_e: head_constant && qs[n] >= qs[0],
            m_vs_g: head_constant && qs[n] > qs[0],
            g_vs_e: cf.all_equal(),
        }
    }
}

// value - (-1)^i
fn shift_by_parity(value: u64, i: usize) -> i64 {
    if i.is_multiple_of(2) {
        value as i64 - 1
    } else {
        value as i64 + 1
    }
}

/// Checks, with oracle values, that for every `0 < a < b <= max_entry` with
/// `a` not dividing `b`, M-Euclid equals Euclid (resp. Grossman) except under
/// the corresponding exception condition, where it equals that value minus
/// `(-1)^I`.
pub fn check_relations(max_entry: u64, oracle_bound: u64) -> Result<Vec<Violation>> {
    let mut euclid = Oracle::with_bound(Variant::Euclid, oracle_bound);
    let mut grossman = Oracle::with_bound(Variant::Grossman, oracle_bound);
    let mut meuclid = Oracle::with_bound(Variant::MEuclid, oracle_bound);
    let mut found = Vec::new();
    for b in 1..=max_entry {
        for a in (1..b).filter(|a| b % a != 0) {
            let p = Position::new(a, b);
            let (ge, gg, gm) = (euclid.grundy(p)?, grossman.grundy(p)?, meuclid.grundy(p)?);
            let cf = ContinuedFraction::expand(a, b)?;
            let index_i = cf.index_i();
            let flags = ExceptionFlags::from_cf(&cf);
            let checks = [
                (ViolationKind::RelationEuclid, "E", ge, flags.m_vs_e),
                (ViolationKind::RelationGrossman, "G", gg, flags.m_vs_g),
            ];
            for (kind, name, other, exception) in checks {
                let expected = if exception {
                    shift_by_parity(other, index_i)
                } else {
                    other as i64
                };
                if expected != gm as i64 {
                    found.push(Violation {
                        kind,
                        variant: Variant::MEuclid,
                        position: p,
                        cf: cf.clone(),
                        index_i,
                        detail: format!(
                            "G_M={gm}, G_{name}={other}, exception={exception}, expected G_M={expected}"
                        ),
                    });
                }
            }
        }
    }
    Ok(found)
}

/// Outcome of [`check_grundy_properties`], one list per variant.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub euclid: Vec<Violation>,
    pub grossman: Vec<Violation>,
    pub meuclid: Vec<Violation>,
}

impl PropertyReport {
    pub fn for_variant(&self, variant: Variant) -> &[Violation] {
        match variant {
            Variant::Euclid => &self.euclid,
            Variant::Grossman => &self.grossman,
            Variant::MEuclid => &self.meuclid,
        }
    }

    pub fn is_clean(&self) -> bool {
        Variant::ALL.iter().all(|&v| self.for_variant(v).is_empty())
    }
}

/// Checks the two Sprague-Grundy properties of the closed forms on every
/// nonterminal position within `max_entry`: no option shares the position's
/// value, and every smaller value is reached by some option.
///
/// The M-Euclid properties are known to hold in general; the Euclid and
/// Grossman lists are an empirical check of the same properties.
pub fn check_grundy_properties(max_entry: u64) -> Result<PropertyReport> {
    let mut report = PropertyReport::default();
    for variant in Variant::ALL {
        let out = match variant {
            Variant::Euclid => &mut report.euclid,
            Variant::Grossman => &mut report.grossman,
            Variant::MEuclid => &mut report.meuclid,
        };
        check_properties_for(variant, max_entry, out)?;
    }
    Ok(report)
}

fn check_properties_for(variant: Variant, max_entry: u64, out: &mut Vec<Violation>) -> Result<()> {
    for p in sweep(variant, max_entry).filter(|p| p.a > 0) {
        if is_terminal(variant, p)? {
            continue;
        }
        let value = formula::value(variant, p)?;
        let options = legal_moves(variant, p)?
            .iter()
            .map(|m| formula::value(variant, m.result))
            .collect::<Result<Vec<_>>>()?;
        let mut reached = vec![false; value as usize];
        let mut shared = false;
        for &o in &options {
            shared |= o == value;
            if let Some(slot) = reached.get_mut(o as usize) {
                *slot = true;
            }
        }
        let missing: Vec<usize> = reached
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(k, _)| k)
            .collect();
        let mut push = |kind, detail| {
            let cf = ContinuedFraction::expand(p.a, p.b).expect("positive entries");
            let index_i = cf.index_i();
            out.push(Violation {
                kind,
                variant,
                position: p,
                cf,
                index_i,
                detail,
            });
        };
        if shared {
            push(
                ViolationKind::ValueShared,
                format!("G={value}, options {options:?}"),
            );
        }
        if !missing.is_empty() {
            push(
                ViolationKind::ValueUnreachable,
                format!("G={value}, unreached {missing:?}"),
            );
        }
    }
    Ok(())
}

/// One cell of a Grundy table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Terminal,
    Value(u64),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Terminal => f.write_str("T"),
            Cell::Value(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Terminal => s.serialize_str("T"),
            Cell::Value(v) => s.serialize_u64(*v),
        }
    }
}

/// Grundy values for `1 <= a <= max_a`, `1 <= b <= max_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrundyTable {
    pub variant: Variant,
    pub method: Method,
    pub rows: Vec<Vec<Cell>>,
}

impl GrundyTable {
    pub fn get(&self, a: u64, b: u64) -> Option<Cell> {
        let row = self.rows.get(usize::try_from(a).ok()?.checked_sub(1)?)?;
        row.get(usize::try_from(b).ok()?.checked_sub(1)?).copied()
    }

    /// Header `a\b,1,..,max_b`, then one line per `a`; terminal cells are `T`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let width = self.rows.first().map_or(0, Vec::len);
        let mut header = vec![r"a\b".to_owned()];
        header.extend((1..=width).map(|b| b.to_string()));
        w.write_record(&header)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut record = vec![(i + 1).to_string()];
            record.extend(row.iter().map(Cell::to_string));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn grundy_table(
    variant: Variant,
    max_a: u64,
    max_b: u64,
    method: Method,
    oracle_bound: u64,
) -> Result<GrundyTable> {
    let mut oracle = Oracle::with_bound(variant, oracle_bound);
    let mut rows = Vec::new();
    for a in 1..=max_a {
        let mut row = Vec::new();
        for b in 1..=max_b {
            let p = Position::new(a, b);
            let cell = if is_terminal(variant, p)? {
                Cell::Terminal
            } else {
                Cell::Value(match method {
                    Method::ClosedForm => formula::value(variant, p)?,
                    Method::Oracle => oracle.grundy(p)?,
                })
            };
            row.push(cell);
        }
        rows.push(row);
    }
    Ok(GrundyTable {
        variant,
        method,
        rows,
    })
}

/// A pair `a < b`, `a` not dividing `b`, where the three games disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub position: Position,
    pub cf: ContinuedFraction,
    pub g_e: u64,
    pub g_g: u64,
    pub g_m: u64,
}

impl CensusRow {
    /// Recomputed from the expansion on every call.
    pub fn flags(&self) -> ExceptionFlags {
        ExceptionFlags::from_cf(&self.cf)
    }

    pub fn record(&self) -> CensusRecord {
        let flags = self.flags();
        CensusRecord {
            a: self.position.a,
            b: self.position.b,
            cf: self.cf.to_string(),
            g_e: self.g_e,
            g_g: self.g_g,
            g_m: self.g_m,
            m_vs_e: flags.m_vs_e,
            m_vs_g: flags.m_vs_g,
            g_vs_e: flags.g_vs_e,
        }
    }
}

/// Flat form of a [`CensusRow`] for CSV and line-delimited output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub a: u64,
    pub b: u64,
    pub cf: String,
    pub g_e: u64,
    pub g_g: u64,
    pub g_m: u64,
    pub m_vs_e: bool,
    pub m_vs_g: bool,
    pub g_vs_e: bool,
}

/// Closed-form census of every `0 < a < b <= max_entry`, `a` not dividing
/// `b`, where any two of the three Grundy values differ.
pub fn exception_census(max_entry: u64) -> Result<Vec<CensusRow>> {
    let mut rows = Vec::new();
    for b in 1..=max_entry {
        for a in (1..b).filter(|a| b % a != 0) {
            let p = Position::new(a, b);
            let g_e = formula::value(Variant::Euclid, p)?;
            let g_g = formula::value(Variant::Grossman, p)?;
            let g_m = formula::value(Variant::MEuclid, p)?;
            if g_e != g_g || g_e != g_m {
                let cf = ContinuedFraction::expand(a, b)?;
                rows.push(CensusRow {
                    position: p,
                    cf,
                    g_e,
                    g_g,
                    g_m,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_census_csv<W: io::Write>(rows: &[CensusRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row.record())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_oracle_at_small_scale() {
        for variant in Variant::ALL {
            assert_eq!(
                verify_range(variant, 100, 100).unwrap(),
                vec![],
                "{variant}"
            );
        }
    }

    #[test]
    fn sweep_respects_oracle_bound() {
        assert!(verify_range(Variant::Euclid, 60, 50).is_err());
    }

    #[test]
    fn sweep_covers_euclid_zero_terminals() {
        let euclid: Vec<_> = sweep(Variant::Euclid, 3).collect();
        assert!(euclid.contains(&Position::new(0, 3)));
        assert_eq!(euclid.len(), 2 + 3 + 4);
        assert_eq!(sweep(Variant::MEuclid, 3).count(), 1 + 2 + 3);
    }

    #[test]
    fn relations_and_spot_values() {
        assert_eq!(check_relations(100, 100).unwrap(), vec![]);

        let cf = ContinuedFraction::expand(5, 12).unwrap();
        let flags = ExceptionFlags::from_cf(&cf);
        assert!(flags.m_vs_e && !flags.m_vs_g && flags.g_vs_e);
        assert_eq!(shift_by_parity(2, cf.index_i()), 1);

        let cf = ContinuedFraction::expand(3, 7).unwrap();
        let flags = ExceptionFlags::from_cf(&cf);
        assert!(flags.m_vs_e && flags.m_vs_g && !flags.g_vs_e);
        assert_eq!(shift_by_parity(1, cf.index_i()), 2);
    }

    #[test]
    fn proof_properties_hold() {
        let report = check_grundy_properties(100).unwrap();
        assert!(report.is_clean(), "{:?}", report);
    }

    #[test]
    fn meuclid_table_row() {
        let t = grundy_table(Variant::MEuclid, 5, 5, Method::ClosedForm, 100).unwrap();
        let row: Vec<String> = t.rows[1].iter().map(Cell::to_string).collect();
        assert_eq!(row, ["T", "T", "1", "T", "2"]);
        for a in 1..=5 {
            for b in 1..=5 {
                assert_eq!(t.get(a, b), t.get(b, a));
            }
        }
        assert_eq!(t.get(0, 1), None);
        assert_eq!(t.get(6, 1), None);
    }

    #[test]
    fn euclid_and_grossman_tables() {
        let e = grundy_table(Variant::Euclid, 3, 3, Method::Oracle, 100).unwrap();
        assert_eq!(e.get(1, 1), Some(Cell::Value(1)));
        let g = grundy_table(Variant::Grossman, 3, 3, Method::Oracle, 100).unwrap();
        for a in 1..=3 {
            assert_eq!(g.get(a, a), Some(Cell::Terminal));
        }
        let closed = grundy_table(Variant::Grossman, 3, 3, Method::ClosedForm, 100).unwrap();
        assert_eq!(g.rows, closed.rows);
    }

    #[test]
    fn table_csv_layout() {
        let t = grundy_table(Variant::MEuclid, 2, 3, Method::ClosedForm, 100).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "a\\b,1,2,3\n1,T,T,T\n2,T,T,1\n"
        );
    }

    #[test]
    fn census_rows() {
        let rows = exception_census(20).unwrap();
        let find = |a, b| rows.iter().find(|r| r.position == Position::new(a, b));

        let r = find(2, 5).unwrap();
        assert_eq!((r.g_e, r.g_g, r.g_m), (1, 2, 2));
        let r = find(5, 12).unwrap();
        assert_eq!((r.g_e, r.g_g, r.g_m), (2, 1, 1));
        let r = find(3, 7).unwrap();
        assert_eq!((r.g_e, r.g_g, r.g_m), (1, 1, 2));
        assert!(r.flags().m_vs_g);

        for r in &rows {
            let f = r.flags();
            assert_eq!(f.m_vs_e, r.g_m != r.g_e, "{:?}", r);
            assert_eq!(f.m_vs_g, r.g_m != r.g_g, "{:?}", r);
            assert_eq!(f.g_vs_e, r.g_g != r.g_e, "{:?}", r);
        }

        let mut buf = Vec::new();
        write_census_csv(&rows[..1], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("a,b,cf,g_e,g_g,g_m,m_vs_e,m_vs_g,g_vs_e\n"));
    }
}
