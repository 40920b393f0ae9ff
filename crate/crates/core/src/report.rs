//! Table assembly, tie-pattern detection and text rendering shared by the
//! command-line front end and the integration tests.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::arith::lcm;
use crate::characters::{unit_group, UnitGroup};
use crate::error::{Error, Result};
use crate::explicit::ExplicitFormula;
use crate::field::FieldSpec;
use crate::gl2::stabilizer_search;
use crate::poly::Poly;
use crate::sieve::{nonmonic_from_monic, sieve_count, sieve_cutoff, CountTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Sieve,
    Explicit,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Sieve => "sieve",
            Source::Explicit => "explicit",
        }
    }
}

/// Which counting route the [`Counter`] may take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Sieve up to the cutoff, explicit formula above it.
    Auto,
    Sieve,
    Explicit,
}

/// Per-degree class counts from whichever route is appropriate.
pub struct Counter {
    group: Arc<UnitGroup>,
    route: Route,
    cutoff: usize,
    engine: OnceLock<Arc<ExplicitFormula>>,
}

impl Counter {
    pub fn new(group: Arc<UnitGroup>, route: Route) -> Self {
        let cutoff = sieve_cutoff(group.field().order());
        Self { group, route, cutoff, engine: OnceLock::new() }
    }

    pub fn for_modulus(field: &FieldSpec, modulus: &str, route: Route) -> Result<Self> {
        let m = Poly::parse(field, modulus)?;
        Ok(Self::new(unit_group(&m)?, route))
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn engine(&self) -> Result<&Arc<ExplicitFormula>> {
        if let Some(e) = self.engine.get() {
            return Ok(e);
        }
        let built = Arc::new(ExplicitFormula::new(&self.group)?);
        Ok(self.engine.get_or_init(|| built))
    }

    pub fn source_for(&self, n: usize) -> Source {
        match self.route {
            Route::Sieve => Source::Sieve,
            Route::Explicit => Source::Explicit,
            Route::Auto if n <= self.cutoff => Source::Sieve,
            Route::Auto => Source::Explicit,
        }
    }

    pub fn count(&self, n: usize) -> Result<(Vec<u128>, Source)> {
        let src = self.source_for(n);
        let counts = match src {
            Source::Sieve => sieve_count(&self.group, n)?.counts,
            Source::Explicit => self.engine()?.count(n)?.counts,
        };
        Ok((counts, src))
    }

    pub fn count_nonmonic(&self, n: usize) -> Result<(Vec<u128>, Source)> {
        let (counts, src) = self.count(n)?;
        let table = CountTable {
            modulus: self.group.modulus().clone(),
            degree: n,
            classes: self.group.units().to_vec(),
            counts,
            excluded: 0,
        };
        Ok((nonmonic_from_monic(&self.group, &table).counts, src))
    }
}

/// Column order for rendered tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnOrder {
    Canonical,
    /// g^0, g^1, …, g^{M'-1} for the generator g of a cyclic unit group.
    GeneratorPowers,
}

pub fn column_ordinals(group: &UnitGroup, order: ColumnOrder) -> Result<Vec<usize>> {
    match order {
        ColumnOrder::Canonical => Ok((0..group.order()).collect()),
        ColumnOrder::GeneratorPowers => {
            if !group.is_cyclic() {
                return Err(Error::NotCyclic);
            }
            let id = group.identity();
            let Some(gen) = group.generators().first() else { return Ok(vec![id]) };
            let g = group.class_of(gen)?;
            Ok((0..group.order() as u64).map(|k| group.pow_fast(g, k)).collect())
        }
    }
}

/// For each residue r mod P, the classes whose counts agree at every observed N ≡ r.
#[derive(Clone, Debug, Serialize)]
pub struct TiePatternReport {
    pub modulus: String,
    pub window: (usize, usize),
    pub period: u64,
    pub residues: Vec<ResiduePattern>,
    pub sources: Vec<(usize, Source)>,
    /// Every residue class of N was observed at least once.
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResiduePattern {
    pub residue: u64,
    pub degrees: Vec<usize>,
    /// Groups of class ordinals, including singletons.
    #[serde(skip)]
    pub groups: Vec<Vec<usize>>,
    /// Same groups as polynomial literals.
    #[serde(rename = "groups")]
    pub group_labels: Vec<Vec<String>>,
}

impl ResiduePattern {
    pub fn ties(&self) -> impl Iterator<Item = &Vec<String>> {
        self.group_labels.iter().filter(|g| g.len() > 1)
    }
}

/// lcm of the periods of all matrices fixing m, or the group exponent if none is informative.
pub fn default_period(group: &UnitGroup) -> u64 {
    let p = stabilizer_search(group.modulus())
        .iter()
        .filter_map(|(b, _)| group.class_of(&b.denominator(group.field())).ok())
        .map(|c| group.element_order(c))
        .fold(1, lcm);
    if p > 1 {
        p
    } else {
        group.exponent()
    }
}

fn refine(groups: Vec<Vec<usize>>, counts: &[u128]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for g in groups {
        let mut buckets: Vec<(u128, Vec<usize>)> = Vec::new();
        for c in g {
            match buckets.iter_mut().find(|(v, _)| *v == counts[c]) {
                Some((_, b)) => b.push(c),
                None => buckets.push((counts[c], vec![c])),
            }
        }
        out.extend(buckets.into_iter().map(|(_, b)| b));
    }
    out
}

/// `order` fixes the order of classes inside and across groups.
pub fn detect_tie_patterns(counter: &Counter, lo: usize, hi: usize, period: u64, order: &[usize]) -> Result<TiePatternReport> {
    if lo == 0 || hi < lo || period == 0 {
        return Err(Error::InvalidArgument(format!("bad window {lo}..{hi} or period {period}")));
    }
    let group = counter.group();
    let mut residues: Vec<ResiduePattern> = (0..period)
        .map(|r| ResiduePattern { residue: r, degrees: Vec::new(), groups: vec![order.to_vec()], group_labels: Vec::new() })
        .collect();
    let mut sources = Vec::new();
    for n in lo..=hi {
        let (counts, src) = counter.count(n)?;
        sources.push((n, src));
        let rp = &mut residues[(n as u64 % period) as usize];
        rp.degrees.push(n);
        rp.groups = refine(std::mem::take(&mut rp.groups), &counts);
    }
    let consistent = residues.iter().all(|r| !r.degrees.is_empty());
    for rp in &mut residues {
        rp.group_labels = rp.groups.iter().map(|g| g.iter().map(|&c| group.unit(c).to_string()).collect()).collect();
    }
    Ok(TiePatternReport { modulus: group.modulus().to_string(), window: (lo, hi), period, residues, sources, consistent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CumulativeTie {
    pub degree: usize,
    pub a: String,
    pub b: String,
    pub value: u128,
}

/// Every pair of distinct classes with equal cumulative counts at some N ≤ n_max.
pub fn check_cumulative_ties(counter: &Counter, n_max: usize) -> Result<Vec<CumulativeTie>> {
    let rows = cumulative_rows(counter, n_max)?;
    Ok(cumulative_ties_from(counter.group(), &rows))
}

pub fn cumulative_ties_from(group: &UnitGroup, rows: &[Row]) -> Vec<CumulativeTie> {
    let mut ties = Vec::new();
    for row in rows {
        for a in 0..row.values.len() {
            for b in a + 1..row.values.len() {
                if row.values[a] == row.values[b] {
                    ties.push(CumulativeTie {
                        degree: row.degree,
                        a: group.unit(a).to_string(),
                        b: group.unit(b).to_string(),
                        value: row.values[a],
                    });
                }
            }
        }
    }
    ties
}

/// One table row; `values` are in canonical class order.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    #[serde(rename = "N")]
    pub degree: usize,
    pub values: Vec<u128>,
    pub source: Source,
}

pub fn count_rows(counter: &Counter, degrees: impl IntoIterator<Item = usize>, nonmonic: bool) -> Result<Vec<Row>> {
    degrees
        .into_iter()
        .map(|n| {
            let (values, source) = if nonmonic { counter.count_nonmonic(n)? } else { counter.count(n)? };
            Ok(Row { degree: n, values, source })
        })
        .collect()
}

pub fn cumulative_rows(counter: &Counter, n_max: usize) -> Result<Vec<Row>> {
    let mut acc = vec![0u128; counter.group().order()];
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let (c, source) = counter.count(n)?;
        for (a, x) in acc.iter_mut().zip(c) {
            *a += x;
        }
        rows.push(Row { degree: n, values: acc.clone(), source });
    }
    Ok(rows)
}

/// A rendered count table.
pub struct CountReport<'a> {
    pub title: String,
    pub group: &'a UnitGroup,
    pub columns: Vec<usize>,
    pub rows: Vec<Row>,
    pub patterns: Option<TiePatternReport>,
    pub cumulative: bool,
}

/// The parts of a [`CountReport`] that do not borrow the unit group.
pub struct CountReportData {
    pub title: String,
    pub columns: Vec<usize>,
    pub rows: Vec<Row>,
    pub patterns: Option<TiePatternReport>,
    pub cumulative: bool,
}

impl CountReportData {
    pub fn with_group(self, group: &UnitGroup) -> CountReport<'_> {
        CountReport {
            title: self.title,
            group,
            columns: self.columns,
            rows: self.rows,
            patterns: self.patterns,
            cumulative: self.cumulative,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?} (md, csv, json)"))),
        }
    }
}

#[derive(Serialize)]
struct JsonRow {
    #[serde(rename = "N")]
    degree: usize,
    counts: Vec<String>,
    source: Source,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    title: &'a str,
    field: String,
    modulus: String,
    cumulative: bool,
    columns: Vec<String>,
    rows: Vec<JsonRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    patterns: Option<&'a TiePatternReport>,
}

impl CountReport<'_> {
    fn column_labels(&self) -> Vec<String> {
        self.columns.iter().map(|&c| self.group.unit(c).to_string()).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.to_md(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_md(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "### {}\n", self.title);
        let labels = self.column_labels();
        let _ = writeln!(s, "| N | {} | source |", labels.join(" | "));
        let _ = writeln!(s, "|---|{}---|", "---|".repeat(labels.len()));
        for r in &self.rows {
            let vals: Vec<String> = self.columns.iter().map(|&c| r.values[c].to_string()).collect();
            let _ = writeln!(s, "| {} | {} | {} |", r.degree, vals.join(" | "), r.source.as_str());
        }
        if let Some(p) = &self.patterns {
            let _ = writeln!(s, "\nTies by N mod {}:\n", p.period);
            for rp in &p.residues {
                let ties: Vec<String> = rp.ties().map(|g| format!("{{{}}}", g.join(", "))).collect();
                let body = if ties.is_empty() { "none".to_string() } else { ties.join(" ") };
                let _ = writeln!(s, "- N = {} (mod {}): {}", rp.residue, p.period, body);
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let labels = self.column_labels();
        let _ = writeln!(s, "N,{},source", labels.join(","));
        for r in &self.rows {
            let vals: Vec<String> = self.columns.iter().map(|&c| r.values[c].to_string()).collect();
            let _ = writeln!(s, "{},{},{}", r.degree, vals.join(","), r.source.as_str());
        }
        s
    }

    pub fn to_json(&self) -> String {
        let t = JsonTable {
            title: &self.title,
            field: self.group.field().to_string(),
            modulus: self.group.modulus().to_string(),
            cumulative: self.cumulative,
            columns: self.column_labels(),
            rows: self
                .rows
                .iter()
                .map(|r| JsonRow {
                    degree: r.degree,
                    // decimal strings keep every consumer exact
                    counts: self.columns.iter().map(|&c| r.values[c].to_string()).collect(),
                    source: r.source,
                })
                .collect(),
            patterns: self.patterns.as_ref(),
        };
        let mut out = serde_json::to_string_pretty(&t).expect("serializable");
        out.push('\n');
        out
    }
}

/// The reproducible tables.
#[derive(Clone, Copy, Debug)]
pub struct TableSpec {
    pub id: &'static str,
    pub q: u32,
    pub modulus: &'static str,
    pub degrees: (usize, usize),
    pub pattern_period: Option<u64>,
    pub cumulative: bool,
    pub title: &'static str,
}

pub const TABLES: [TableSpec; 6] = [
    TableSpec {
        id: "T3T1",
        q: 2,
        modulus: "T^3+T+1",
        degrees: (9, 22),
        pattern_period: Some(7),
        cumulative: false,
        title: "Monic irreducibles of degree N modulo T^3+T+1 over F2, columns T^0..T^6",
    },
    TableSpec {
        id: "T2T1group",
        q: 2,
        modulus: "T^2+T+1",
        degrees: (10, 20),
        pattern_period: Some(3),
        cumulative: false,
        title: "Monic irreducibles of degree N modulo T^2+T+1 over F2, columns T^0..T^2",
    },
    TableSpec {
        id: "p3T21group",
        q: 3,
        modulus: "T^2+1",
        degrees: (10, 20),
        pattern_period: Some(2),
        cumulative: false,
        title: "Monic irreducibles of degree N modulo T^2+1 over F3, columns (T+1)^0..(T+1)^7",
    },
    TableSpec {
        id: "p2T2",
        q: 2,
        modulus: "T^2",
        degrees: (10, 20),
        pattern_period: Some(2),
        cumulative: false,
        title: "Monic irreducibles of degree N modulo T^2 over F2, columns 1, T+1",
    },
    TableSpec {
        id: "p3T2",
        q: 3,
        modulus: "T^2",
        degrees: (10, 20),
        pattern_period: Some(4),
        cumulative: false,
        title: "Monic irreducibles of degree N modulo T^2 over F3, columns (T+2)^0..(T+2)^5",
    },
    TableSpec {
        id: "T3T1cum",
        q: 2,
        modulus: "T^3+T+1",
        degrees: (1, 40),
        pattern_period: None,
        cumulative: true,
        title: "Cumulative monic irreducibles of degree <= N modulo T^3+T+1 over F2, columns T^0..T^6",
    },
];

pub fn table_spec(id: &str) -> Result<TableSpec> {
    TABLES.iter().copied().find(|t| t.id == id).ok_or_else(|| {
        let ids: Vec<&str> = TABLES.iter().map(|t| t.id).collect();
        Error::InvalidArgument(format!("unknown table {id:?}; known: {}", ids.join(", ")))
    })
}

/// A stored table computed from scratch.
pub struct BuiltTable {
    pub counter: Counter,
    pub columns: Vec<usize>,
    pub rows: Vec<Row>,
    pub patterns: Option<TiePatternReport>,
}

impl BuiltTable {
    pub fn report(self, spec: &TableSpec) -> (Counter, CountReportData) {
        let data = CountReportData {
            title: format!("{} ({})", spec.title, spec.id),
            columns: self.columns,
            rows: self.rows,
            patterns: self.patterns,
            cumulative: spec.cumulative,
        };
        (self.counter, data)
    }
}

pub fn build_table(spec: &TableSpec, route: Route) -> Result<BuiltTable> {
    let field = FieldSpec::with_order(spec.q)?;
    let counter = Counter::for_modulus(&field, spec.modulus, route)?;
    let columns = column_ordinals(counter.group(), ColumnOrder::GeneratorPowers)?;
    let (lo, hi) = spec.degrees;
    let rows = if spec.cumulative {
        cumulative_rows(&counter, hi)?.into_iter().filter(|r| r.degree >= lo).collect()
    } else {
        count_rows(&counter, lo..=hi, false)?
    };
    let patterns = spec.pattern_period.map(|p| patterns_from_rows(counter.group(), &rows, p, &columns));
    Ok(BuiltTable { counter, columns, rows, patterns })
}

/// Tie patterns from already computed rows (same grouping as [`detect_tie_patterns`]).
pub fn patterns_from_rows(group: &UnitGroup, rows: &[Row], period: u64, order: &[usize]) -> TiePatternReport {
    let mut residues: Vec<ResiduePattern> = (0..period)
        .map(|r| ResiduePattern { residue: r, degrees: Vec::new(), groups: vec![order.to_vec()], group_labels: Vec::new() })
        .collect();
    for row in rows {
        let rp = &mut residues[(row.degree as u64 % period) as usize];
        rp.degrees.push(row.degree);
        rp.groups = refine(std::mem::take(&mut rp.groups), &row.values);
    }
    let consistent = residues.iter().all(|r| !r.degrees.is_empty());
    for rp in &mut residues {
        rp.group_labels = rp.groups.iter().map(|g| g.iter().map(|&c| group.unit(c).to_string()).collect()).collect();
    }
    let lo = rows.first().map_or(0, |r| r.degree);
    let hi = rows.last().map_or(0, |r| r.degree);
    TiePatternReport {
        modulus: group.modulus().to_string(),
        window: (lo, hi),
        period,
        residues,
        sources: rows.iter().map(|r| (r.degree, r.source)).collect(),
        consistent,
    }
}

pub fn emit_table(id: &str, format: Format, route: Route) -> Result<String> {
    let spec = table_spec(id)?;
    let (counter, data) = build_table(&spec, route)?.report(&spec);
    Ok(data.with_group(counter.group()).render(format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counter(q: u32, m: &str) -> Counter {
        Counter::for_modulus(&FieldSpec::with_order(q).unwrap(), m, Route::Auto).unwrap()
    }

    #[test]
    fn generator_power_columns() {
        let c = counter(2, "T^3+T+1");
        let cols = column_ordinals(c.group(), ColumnOrder::GeneratorPowers).unwrap();
        let labels: Vec<String> = cols.iter().map(|&o| c.group().unit(o).to_string()).collect();
        assert_eq!(labels, ["1", "T", "T^2", "T+1", "T^2+T", "T^2+T+1", "T^2+1"]);
        let c = counter(3, "T^2+T");
        assert!(column_ordinals(c.group(), ColumnOrder::GeneratorPowers).is_err());
    }

    #[test]
    fn tie_patterns() {
        let c = counter(2, "T^3+T+1");
        let order = column_ordinals(c.group(), ColumnOrder::GeneratorPowers).unwrap();
        let rep = detect_tie_patterns(&c, 9, 22, 7, &order).unwrap();
        assert!(rep.consistent);
        assert_eq!(rep.residues[1].group_labels, vec![vec!["1", "T", "T+1"], vec!["T^2", "T^2+T", "T^2+T+1"], vec!["T^2+1"]]);
        let c = counter(2, "T^2+T+1");
        let order = column_ordinals(c.group(), ColumnOrder::GeneratorPowers).unwrap();
        let rep = detect_tie_patterns(&c, 10, 20, 3, &order).unwrap();
        assert_eq!(rep.residues[0].group_labels, vec![vec!["1"], vec!["T", "T+1"]]);
        assert_eq!(rep.residues[1].group_labels, vec![vec!["1", "T", "T+1"]]);
        // T and T+1 = T^2 agree at every degree in the window
        let rep = detect_tie_patterns(&c, 10, 20, 1, &order).unwrap();
        assert_eq!(rep.residues[0].ties().collect::<Vec<_>>(), vec![&vec!["T".to_string(), "T+1".to_string()]]);
    }

    #[test]
    fn default_periods() {
        assert_eq!(default_period(counter(2, "T^3+T+1").group()), 7);
        assert_eq!(default_period(counter(2, "T^2+T+1").group()), 3);
        assert_eq!(default_period(counter(3, "T^2+1").group()), 8);
    }

    #[test]
    fn cumulative() {
        let c = counter(2, "T^3+T+1");
        let ties = check_cumulative_ties(&c, 2).unwrap();
        assert!(ties.contains(&CumulativeTie { degree: 2, a: "T".into(), b: "T+1".into(), value: 1 }));
        let rows = cumulative_rows(&c, 3).unwrap();
        let order = column_ordinals(c.group(), ColumnOrder::GeneratorPowers).unwrap();
        let r: Vec<Vec<u128>> = rows.iter().map(|r| order.iter().map(|&o| r.values[o]).collect()).collect();
        assert_eq!(r, vec![vec![0, 1, 0, 1, 0, 0, 0], vec![0, 1, 0, 1, 0, 1, 0], vec![0, 1, 0, 1, 1, 1, 0]]);
    }

    #[test]
    fn routing_labels() {
        let c = counter(3, "T^2+1");
        assert_eq!(c.source_for(14), Source::Sieve);
        assert_eq!(c.source_for(15), Source::Explicit);
        let (a, _) = c.count(9).unwrap();
        let e = Counter::new(c.group().clone(), Route::Explicit);
        assert_eq!(e.count(9).unwrap(), (a, Source::Explicit));
    }

    #[test]
    fn rendering() {
        let c = counter(2, "T^2");
        let rows = count_rows(&c, 10..=11, false).unwrap();
        let rep =
            CountReport { title: "t".into(), group: c.group(), columns: vec![0, 1], rows, patterns: None, cumulative: false };
        assert_eq!(rep.to_csv(), "N,1,T+1,source\n10,48,51,sieve\n11,93,93,sieve\n");
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["rows"][0]["counts"][1], "51");
        assert!(rep.to_md().contains("| 10 | 48 | 51 | sieve |"));
        assert!("xml".parse::<Format>().is_err());
        assert!(table_spec("nope").is_err());
    }
}
