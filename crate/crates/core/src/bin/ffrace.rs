use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde::Serialize;

use ffrace::characters::{unit_group, Character, UnitGroup};
use ffrace::explicit::{bias_report, ExplicitFormula};
use ffrace::gl2::{certify_ties, sampled_transport_check, stabilizer_search, verify_certificate_empirically, TieCertificate};
use ffrace::lfunc::{all_l_polynomials, find_conjugate_relations, l_polynomial};
use ffrace::report::{
    column_ordinals, count_rows, cumulative_rows, cumulative_ties_from, default_period, detect_tie_patterns, emit_table,
    ColumnOrder, CountReport, Counter, Format, Route, TiePatternReport,
};
use ffrace::{Error, FieldSpec, Poly, Result};

#[derive(Parser)]
#[command(name = "ffrace", version, about = "Exact prime races in F_q[T]")]
struct Cli {
    /// Base field, e.g. F2, F3, F4
    #[arg(long, global = true, default_value = "F2")]
    field: String,
    /// Modulus polynomial, e.g. "T^3+T+1"
    #[arg(long, global = true)]
    modulus: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Md)]
    format: Fmt,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled property checks; counting never uses randomness
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Md,
    Csv,
    Json,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Md => Format::Md,
            Fmt::Csv => Format::Csv,
            Fmt::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Auto,
    Sieve,
    Explicit,
}

impl From<SourceArg> for Route {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Auto => Route::Auto,
            SourceArg::Sieve => Route::Sieve,
            SourceArg::Explicit => Route::Explicit,
        }
    }
}

#[derive(Args)]
struct SourceOpt {
    /// Counting route; auto uses the sieve up to its cutoff and the explicit formula above
    #[arg(long, value_enum, default_value_t = SourceArg::Auto)]
    source: SourceArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Lt,
    Eq,
    Gt,
}

#[derive(Subcommand)]
enum Cmd {
    /// Irreducible counts per residue class in one degree
    Count {
        #[arg(long)]
        degree: usize,
        /// Count all irreducibles, not only monic ones
        #[arg(long)]
        nonmonic: bool,
        /// Rows 1..=degree of cumulative counts
        #[arg(long)]
        cumulative: bool,
        #[command(flatten)]
        source: SourceOpt,
    },
    /// Counts from the explicit formula only
    CountExplicit {
        #[arg(long)]
        degree: usize,
        /// Emit every per-divisor, per-character term
        #[arg(long)]
        breakdown: bool,
    },
    /// L-polynomial of one character
    Lpoly {
        /// Exponent vector, e.g. 1 or 1,0
        #[arg(long = "char")]
        chi: String,
    },
    /// Galois relations between inverse zeros of L-functions
    Relations,
    /// Matrix tie certificates
    TiesGl2 {
        /// Target residue e of N mod the period; all residues if omitted
        #[arg(long)]
        residue: Option<u64>,
        /// Check each certificate against exact counts up to this degree
        #[arg(long)]
        verify: Option<usize>,
        /// Random irreducibles per certificate to push through the action
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Equal-count class groups per residue of N
    TiesEmpirical {
        #[arg(long)]
        lo: usize,
        #[arg(long)]
        hi: usize,
        #[arg(long)]
        period: Option<u64>,
        #[command(flatten)]
        source: SourceOpt,
    },
    /// Reproduce a stored table
    Table {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        source: SourceOpt,
    },
    /// Cumulative counts up to n-max and the ties among them
    Cumulative {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        source: SourceOpt,
    },
    /// Sign of pi(N;m,a) - pi(N;m,b) over a range of degrees
    Bias {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        /// Expected sign; mismatching degrees are listed as violations
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli).and_then(|text| write_out(&cli, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Consistency(_) => 2,
                _ => 1,
            })
        }
    }
}

fn write_out(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn group(cli: &Cli) -> Result<std::sync::Arc<UnitGroup>> {
    let field: FieldSpec = cli.field.parse()?;
    let m = cli.modulus.as_deref().ok_or_else(|| Error::InvalidArgument("--modulus is required".into()))?;
    unit_group(&Poly::parse(&field, m)?)
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String> {
    let format: Format = cli.format.into();
    match &cli.cmd {
        Cmd::Table { id, source } => emit_table(id, format, source.source.into()),
        Cmd::Count { degree, nonmonic, cumulative, source } => {
            let counter = Counter::new(group(cli)?, source.source.into());
            let rows = if *cumulative {
                if *nonmonic {
                    return Err(Error::InvalidArgument("--cumulative counts monic irreducibles only".into()));
                }
                cumulative_rows(&counter, *degree)?
            } else {
                count_rows(&counter, [*degree], *nonmonic)?
            };
            let g = counter.group();
            let kind = if *nonmonic { "Irreducibles" } else { "Monic irreducibles" };
            let deg = if *cumulative { format!("degree <= {degree}") } else { format!("degree {degree}") };
            Ok(CountReport {
                title: format!("{kind} of {deg} modulo {} over {}", g.modulus(), g.field()),
                group: g,
                columns: column_ordinals(g, ColumnOrder::Canonical)?,
                rows,
                patterns: None,
                cumulative: *cumulative,
            }
            .render(format))
        }
        Cmd::CountExplicit { degree, breakdown } => {
            let g = group(cli)?;
            let engine = ExplicitFormula::new(&g)?;
            let c = if *breakdown { engine.count_with_breakdown(*degree)? } else { engine.count(*degree)? };
            Ok(match format {
                Format::Json => json(&c),
                Format::Csv => {
                    let mut s = String::from("N,class,count\n");
                    for (p, n) in g.units().iter().zip(&c.counts) {
                        let _ = writeln!(s, "{degree},{p},{n}");
                    }
                    s
                }
                Format::Md => {
                    let mut s = format!(
                        "### Explicit formula, degree {degree}, modulus {}\n\n| class | count |\n|---|---|\n",
                        g.modulus()
                    );
                    for (p, n) in g.units().iter().zip(&c.counts) {
                        let _ = writeln!(s, "| {p} | {n} |");
                    }
                    if let Some(terms) = &c.breakdown {
                        s.push_str("\n| d | class | character | term |\n|---|---|---|---|\n");
                        for t in terms {
                            let _ = writeln!(s, "| {} | {} | {} | {} |", t.d, t.class, t.character, t.term);
                        }
                    }
                    s
                }
            })
        }
        Cmd::Lpoly { chi } => {
            let g = group(cli)?;
            let chi = Character::parse(&g, chi)?;
            let l = l_polynomial(&chi)?;
            let roots = l.inverse_roots();
            #[derive(Serialize)]
            struct Out<'a> {
                modulus: String,
                character: String,
                order: u64,
                coeffs: &'a [ffrace::cyclo::CycloNum],
                degree_m_sum: &'a ffrace::cyclo::CycloNum,
                inverse_roots: Vec<[f64; 2]>,
                abs: Vec<f64>,
                weil_ok: bool,
            }
            let out = Out {
                modulus: g.modulus().to_string(),
                character: chi.label(),
                order: chi.order(),
                coeffs: l.coeffs(),
                degree_m_sum: l.degree_m_sum(),
                inverse_roots: roots.iter().map(|z| [z.re, z.im]).collect(),
                abs: roots.iter().map(|z| z.norm()).collect(),
                weil_ok: l.weil_check(1e-9),
            };
            Ok(match format {
                Format::Json => json(&out),
                Format::Csv => {
                    let mut s = String::from("n,coefficient\n");
                    for (i, c) in out.coeffs.iter().enumerate() {
                        let _ = writeln!(s, "{},{c}", i);
                    }
                    s
                }
                Format::Md => {
                    let mut s =
                        format!("### L(u, chi) for chi = {} modulo {}\n\n| n | a_n |\n|---|---|\n", out.character, out.modulus);
                    for (i, c) in out.coeffs.iter().enumerate() {
                        let _ = writeln!(s, "| {i} | {c} |");
                    }
                    s.push_str("\n| inverse root | abs |\n|---|---|\n");
                    for (r, a) in out.inverse_roots.iter().zip(&out.abs) {
                        let _ = writeln!(s, "| {:.12} {:+.12}i | {a:.12} |", r[0], r[1]);
                    }
                    let _ = writeln!(s, "\nWeil bound holds: {}", out.weil_ok);
                    s
                }
            })
        }
        Cmd::Relations => {
            let g = group(cli)?;
            let rel = find_conjugate_relations(&all_l_polynomials(&g));
            Ok(match format {
                Format::Json => json(&rel),
                Format::Csv => {
                    let mut s = String::from("chi,chi_prime,l,t,reduced\n");
                    for r in &rel {
                        let _ = writeln!(s, "\"{}\",\"{}\",{},{},{}", r.chi, r.chi_prime, r.l, r.t, r.reduced);
                    }
                    s
                }
                Format::Md => {
                    let mut s = format!(
                        "### Galois relations modulo {} (E = {})\n\n| chi | chi' | l | t | reduced |\n|---|---|---|---|---|\n",
                        g.modulus(),
                        g.exponent()
                    );
                    for r in &rel {
                        let _ = writeln!(s, "| {} | {} | {} | {} | {} |", r.chi, r.chi_prime, r.l, r.t, r.reduced);
                    }
                    s
                }
            })
        }
        Cmd::TiesGl2 { residue, verify, samples } => ties_gl2(cli, format, *residue, *verify, *samples),
        Cmd::TiesEmpirical { lo, hi, period, source } => {
            let counter = Counter::new(group(cli)?, source.source.into());
            let p = period.unwrap_or_else(|| default_period(counter.group()));
            let order = column_ordinals(counter.group(), ColumnOrder::Canonical)?;
            let rep = detect_tie_patterns(&counter, *lo, *hi, p, &order)?;
            Ok(render_patterns(&rep, format))
        }
        Cmd::Cumulative { n_max, source } => {
            let counter = Counter::new(group(cli)?, source.source.into());
            let rows = cumulative_rows(&counter, *n_max)?;
            let ties = cumulative_ties_from(counter.group(), &rows);
            let g = counter.group();
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        modulus: String,
                        n_max: usize,
                        ties: &'a [ffrace::report::CumulativeTie],
                        last_tie: Option<usize>,
                    }
                    Ok(json(&Out {
                        modulus: g.modulus().to_string(),
                        n_max: *n_max,
                        ties: &ties,
                        last_tie: ties.last().map(|t| t.degree),
                    }))
                }
                _ => {
                    let mut s = CountReport {
                        title: format!("Cumulative monic irreducibles modulo {} over {}", g.modulus(), g.field()),
                        group: g,
                        columns: column_ordinals(g, ColumnOrder::Canonical)?,
                        rows,
                        patterns: None,
                        cumulative: true,
                    }
                    .render(format);
                    if format == Format::Md {
                        s.push_str("\n| N | a | b | value |\n|---|---|---|---|\n");
                        for t in &ties {
                            let _ = writeln!(s, "| {} | {} | {} | {} |", t.degree, t.a, t.b, t.value);
                        }
                    }
                    Ok(s)
                }
            }
        }
        Cmd::Bias { a, b, from, to, step, expect } => {
            let g = group(cli)?;
            let engine = ExplicitFormula::new(&g)?;
            let a = Poly::parse(g.field(), a)?;
            let b = Poly::parse(g.field(), b)?;
            if *step == 0 || from > to {
                return Err(Error::InvalidArgument("empty degree range".into()));
            }
            let expected = expect.map(|e| match e {
                Expect::Lt => std::cmp::Ordering::Less,
                Expect::Eq => std::cmp::Ordering::Equal,
                Expect::Gt => std::cmp::Ordering::Greater,
            });
            let rep = bias_report(&engine, &a, &b, (*from..=*to).step_by(*step), expected)?;
            Ok(match format {
                Format::Json => json(&rep),
                Format::Csv => {
                    let mut s = String::from("N,a,b,difference\n");
                    for r in &rep.rows {
                        let _ = writeln!(s, "{},{},{},{}", r.degree, r.a, r.b, r.difference);
                    }
                    s
                }
                Format::Md => {
                    let mut s = format!(
                        "### pi(N; m, {}) - pi(N; m, {}) modulo {}\n\n| N | a | b | a - b |\n|---|---|---|---|\n",
                        rep.a,
                        rep.b,
                        g.modulus()
                    );
                    for r in &rep.rows {
                        let _ = writeln!(s, "| {} | {} | {} | {} |", r.degree, r.a, r.b, r.difference);
                    }
                    let _ = writeln!(
                        s,
                        "\npositive {}, zero {}, negative {}, violations {:?}",
                        rep.positive, rep.zero, rep.negative, rep.violations
                    );
                    s
                }
            })
        }
    }
}

fn ties_gl2(cli: &Cli, format: Format, residue: Option<u64>, verify: Option<usize>, samples: usize) -> Result<String> {
    let g = group(cli)?;
    let engine = match verify {
        Some(n) if n > ffrace::sieve::sieve_cutoff(g.field().order()) => Some(ExplicitFormula::new(&g)?),
        _ => None,
    };
    let mut rng = rand::rngs::StdRng::seed_from_u64(cli.seed);
    #[derive(Serialize)]
    struct Entry {
        #[serde(flatten)]
        cert: TieCertificate,
        #[serde(skip_serializing_if = "Option::is_none")]
        verified_degrees: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        sampled_irreducibles: Option<usize>,
    }
    let mut entries = Vec::new();
    for (b, lambda) in stabilizer_search(g.modulus()) {
        let probe = certify_ties(&g, &b, lambda, 0)?;
        let residues: Vec<u64> = match residue {
            Some(e) => vec![e % probe.period],
            None => (0..probe.period).collect(),
        };
        for e in residues {
            let cert = certify_ties(&g, &b, lambda, e)?;
            let verified_degrees = match verify {
                Some(n) => Some(verify_certificate_empirically(&g, &cert, engine.as_ref(), n)?),
                None => None,
            };
            let sampled_irreducibles = if samples > 0 {
                let n = sample_degree(&cert, g.field().order());
                Some(sampled_transport_check(&g, &cert, n, samples, &mut rng)?)
            } else {
                None
            };
            entries.push(Entry { cert, verified_degrees, sampled_irreducibles });
        }
    }
    Ok(match format {
        Format::Json => json(&entries),
        Format::Csv => {
            let mut s = String::from("matrix,lambda,period,e,monic_certified,orbits\n");
            for en in &entries {
                let c = &en.cert;
                let orbits: Vec<String> = c.orbit_labels().iter().map(|o| o.join(" ")).collect();
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{},\"{}\"",
                    c.matrix,
                    c.lambda,
                    c.period,
                    c.e,
                    c.monic_certified,
                    orbits.join(" | ")
                );
            }
            s
        }
        Format::Md => {
            let mut s = format!("### Matrix tie certificates modulo {} over {}\n\n", g.modulus(), g.field());
            s.push_str("| matrix | lambda | N0 | e | monic certified | orbits |\n|---|---|---|---|---|---|\n");
            for en in &entries {
                let c = &en.cert;
                let orbits: Vec<String> =
                    c.orbit_labels().iter().filter(|o| o.len() > 1).map(|o| format!("{{{}}}", o.join(", "))).collect();
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} |",
                    c.matrix,
                    c.lambda,
                    c.period,
                    c.e,
                    c.monic_certified,
                    orbits.join(" ")
                );
            }
            s
        }
    })
}

/// Smallest covered degree whose search space is still cheap to sample.
fn sample_degree(cert: &TieCertificate, q: u32) -> usize {
    let mut n = (cert.e as usize).max(2);
    while !cert.covers(n) {
        n += 1;
    }
    let mut best = n;
    while (q as f64).powi((n + cert.period as usize) as i32) < 1e7 {
        n += cert.period as usize;
        best = n;
    }
    best
}

fn render_patterns(rep: &TiePatternReport, format: Format) -> String {
    match format {
        Format::Json => json(rep),
        Format::Csv => {
            let mut s = String::from("residue,group\n");
            for rp in &rep.residues {
                for grp in &rp.group_labels {
                    let _ = writeln!(s, "{},\"{}\"", rp.residue, grp.join(" "));
                }
            }
            s
        }
        Format::Md => {
            let mut s = format!(
                "### Tie patterns modulo {}, N in {}..{}, period {}\n\n| N mod {} | degrees | tied groups |\n|---|---|---|\n",
                rep.modulus, rep.window.0, rep.window.1, rep.period, rep.period
            );
            for rp in &rep.residues {
                let ties: Vec<String> = rp.ties().map(|grp| format!("{{{}}}", grp.join(", "))).collect();
                let degrees: Vec<String> = rp.degrees.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(
                    s,
                    "| {} | {} | {} |",
                    rp.residue,
                    degrees.join(" "),
                    if ties.is_empty() { "none".into() } else { ties.join(" ") }
                );
            }
            let _ = writeln!(s, "\nevery residue observed: {}", rep.consistent);
            s
        }
    }
}
