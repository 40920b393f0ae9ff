//! Stored tables: byte-stable renderings and agreement with the reference numbers.
//! Set `UPDATE_GOLDEN=1` to rewrite the files under tests/golden.

mod common;

use std::path::PathBuf;

use ffrace::report::{build_table, table_spec, BuiltTable, CountReport, Format, Route, TABLES};

fn golden_path(id: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{id}.{ext}"))
}

#[test]
fn tables_match_golden_files_and_reference_values() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for spec in TABLES {
        let BuiltTable { counter, columns, rows, patterns } = build_table(&spec, Route::Auto).unwrap();

        let reference = common::ALL.iter().find(|p| p.id == spec.id).unwrap();
        assert_eq!(rows.len(), reference.rows.len(), "{}", spec.id);
        for (row, want) in rows.iter().zip(reference.rows) {
            let got: Vec<u64> = columns.iter().map(|&c| row.values[c] as u64).collect();
            assert_eq!(row.degree, reference.first_degree + (row.degree - rows[0].degree));
            assert_eq!(&got, want, "{} N={}", spec.id, row.degree);
        }

        if let Some(p) = &patterns {
            for &(id, period, residue, groups) in common::PATTERNS.iter().filter(|t| t.0 == spec.id) {
                assert_eq!(p.period, period, "{id}");
                let rp = &p.residues[residue as usize];
                let mut got: Vec<Vec<usize>> = rp
                    .groups
                    .iter()
                    .filter(|g| g.len() > 1)
                    .map(|g| {
                        let mut v: Vec<usize> = g.iter().map(|o| columns.iter().position(|c| c == o).unwrap()).collect();
                        v.sort();
                        v
                    })
                    .collect();
                got.sort();
                let want: Vec<Vec<usize>> = groups.iter().map(|g| g.to_vec()).collect();
                assert_eq!(got, want, "{id} residue {residue}");
            }
        }

        let report = CountReport {
            title: format!("{} ({})", spec.title, spec.id),
            group: counter.group(),
            columns,
            rows,
            patterns,
            cumulative: spec.cumulative,
        };
        for (format, ext) in [(Format::Md, "md"), (Format::Csv, "csv"), (Format::Json, "json")] {
            let text = report.render(format);
            let path = golden_path(spec.id, ext);
            if update {
                std::fs::write(&path, &text).unwrap();
                continue;
            }
            let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
            assert_eq!(text, want, "{} differs from {}", spec.id, path.display());
        }
    }
}

#[test]
fn explicit_route_reproduces_the_golden_numbers() {
    // The csv golden files carry the route in the last column; strip it and compare.
    for id in ["T2T1group", "p2T2"] {
        let spec = table_spec(id).unwrap();
        let BuiltTable { counter, columns, rows, .. } = build_table(&spec, Route::Explicit).unwrap();
        let report =
            CountReport { title: String::new(), group: counter.group(), columns, rows, patterns: None, cumulative: false };
        let strip = |s: &str| s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
        let want = std::fs::read_to_string(golden_path(id, "csv")).unwrap();
        assert_eq!(strip(&report.to_csv()), strip(&want));
    }
}
