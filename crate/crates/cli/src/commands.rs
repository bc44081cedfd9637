use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::json;
use tristate_kofn::document::{load_system, System};
use tristate_kofn::fixtures::{self, TABLE1};
use tristate_kofn::oracle::{random_chain, MAX_BRUTE_FORCE_N};
use tristate_kofn::pgf::{general_distribution, pgf_bivariate, pgf_univariate};
use tristate_kofn::subset::{subset_distribution, subset_limit};
use tristate_kofn::timing::{geometric_grid, median_ns};
use tristate_kofn::{compute as run_method, Level, Method, Outcome, SystemSpec};

use crate::render::{self, aligned, fixed, Format, COLUMNS};
use crate::{Builtin, Failure};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn read_system(file: &Path) -> Result<System, Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", file.display())))?;
    Ok(load_system(&text)?)
}

pub fn compute(file: &Path, method: Method, format: Format) -> Result<Output, Failure> {
    let system = read_system(file)?;
    let outcome = run_method(&system.chain, &system.spec, method)?;
    Ok(Output::ok(render::distribution(&system, method, &outcome, format)))
}

fn applicable(system: &System, samples: u64, seed: u64) -> Vec<Method> {
    let n = system.spec.n();
    let mut methods = vec![Method::Pgf];
    if system.spec.is_increasing_or_constant() {
        methods.push(Method::PgfUni);
    }
    if n <= subset_limit(&system.spec) {
        methods.push(Method::Subset);
    }
    if n <= MAX_BRUTE_FORCE_N {
        methods.push(Method::Brute);
    }
    methods.push(Method::MonteCarlo { samples, seed });
    methods
}

/// Whether two outcomes agree: exact pairs within `tolerance`, an estimate
/// within three standard errors (plus `tolerance`) on every column.
fn agrees(a: &Outcome, b: &Outcome, tolerance: f64) -> bool {
    let (da, db) = (a.distribution().as_array(), b.distribution().as_array());
    let slack = match (a, b) {
        (Outcome::Estimate(e), Outcome::Exact(_)) | (Outcome::Exact(_), Outcome::Estimate(e)) => {
            e.std_err_array().map(|se| 3.0 * se + tolerance)
        }
        (Outcome::Estimate(_), Outcome::Estimate(_)) => [f64::INFINITY; 5],
        (Outcome::Exact(_), Outcome::Exact(_)) => [tolerance; 5],
    };
    da.iter().zip(db).zip(slack).all(|((x, y), s)| (x - y).abs() <= s)
}

pub fn verify(file: &Path, tolerance: f64, samples: u64, seed: u64) -> Result<Output, Failure> {
    let system = read_system(file)?;
    let results = applicable(&system, samples, seed)
        .into_iter()
        .map(|m| Ok((m, run_method(&system.chain, &system.spec, m)?)))
        .collect::<Result<Vec<_>, Failure>>()?;

    let spec = &system.spec;
    let mut out = String::new();
    writeln!(
        out,
        "{}",
        render::bold(&format!(
            "n = {}, k1 = {}, k2 = {} ({}), tolerance = {tolerance:e}",
            spec.n(),
            spec.k1(),
            spec.k2(),
            spec.kind()
        ))
    )
    .unwrap();

    let mut rows = vec![std::iter::once("method".to_string())
        .chain(COLUMNS.iter().map(|c| c.to_string()))
        .collect::<Vec<_>>()];
    for (m, o) in &results {
        rows.push(
            std::iter::once(m.name().to_string())
                .chain(o.distribution().as_array().iter().map(|v| fixed(*v)))
                .collect(),
        );
    }
    out.push_str(&aligned(&rows));
    out.push('\n');

    let mut matrix = vec![std::iter::once("max|diff|".to_string())
        .chain(results.iter().map(|(m, _)| m.name().to_string()))
        .collect::<Vec<_>>()];
    let mut all_ok = true;
    for (ma, a) in &results {
        let mut row = vec![ma.name().to_string()];
        for (_, b) in &results {
            let diff = a.distribution().max_abs_diff(&b.distribution());
            let ok = agrees(a, b, tolerance);
            all_ok &= ok;
            row.push(format!("{diff:.2e}{}", if ok { "" } else { "*" }));
        }
        matrix.push(row);
    }
    out.push_str(&aligned(&matrix));
    writeln!(
        out,
        "{}",
        if all_ok {
            "PASS: all backend pairs agree"
        } else {
            "FAIL: pairs marked * disagree"
        }
    )
    .unwrap();
    Ok(Output {
        text: out,
        code: if all_ok { 0 } else { 1 },
    })
}

struct Record {
    label: String,
    published: f64,
    computed: f64,
}

fn records_output(records: &[Record], format: Format, note: Option<&str>) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("quantity,published,computed,abs_diff\n");
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{:.3e}",
                    r.label,
                    fixed(r.published),
                    fixed(r.computed),
                    (r.published - r.computed).abs()
                )
                .unwrap();
            }
            out
        }
        Format::Json => {
            let items: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "quantity": r.label,
                        "published": r.published,
                        "computed": r.computed,
                        "abs_diff": (r.published - r.computed).abs(),
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).unwrap())
        }
        Format::Table => {
            let mut rows = vec![vec![
                "quantity".to_string(),
                "published".into(),
                "computed".into(),
                "|diff|".into(),
            ]];
            for r in records {
                rows.push(vec![
                    r.label.clone(),
                    fixed(r.published),
                    fixed(r.computed),
                    format!("{:.2e}", (r.published - r.computed).abs()),
                ]);
            }
            let mut out = aligned(&rows);
            if let Some(note) = note {
                writeln!(out, "note: {note}").unwrap();
            }
            out
        }
    }
}

fn example1(format: Format) -> Result<String, Failure> {
    let system = fixtures::example1_document().resolve()?;
    let psi1 = pgf_univariate(&system.chain, Level::AtLeastPartial);
    let psi2 = pgf_univariate(&system.chain, Level::Perfect);
    let d = general_distribution(&system.chain, &system.spec)?;
    let mut records = Vec::new();
    for (name, poly, published) in [
        ("Psi1", &psi1, fixtures::EXAMPLE1_PSI1),
        ("Psi2", &psi2, fixtures::EXAMPLE1_PSI2),
    ] {
        for (x, p) in published.iter().enumerate() {
            records.push(Record {
                label: format!("{name}[t^{x}]"),
                published: *p,
                computed: poly.coeff(x),
            });
        }
    }
    for ((name, p), c) in COLUMNS.iter().zip(fixtures::EXAMPLE1_DISTRIBUTION).zip(d.as_array()) {
        records.push(Record {
            label: name.to_string(),
            published: p,
            computed: c,
        });
    }
    Ok(records_output(&records, format, None))
}

fn example2(format: Format) -> Result<String, Failure> {
    let system = fixtures::example2_document().resolve()?;
    let gamma = pgf_bivariate(&system.chain);
    let d = general_distribution(&system.chain, &system.spec)?;
    let mut records: Vec<Record> = fixtures::EXAMPLE2_GAMMA
        .iter()
        .map(|&(x, y, p)| Record {
            label: format!("Gamma[t1^{x} t2^{y}]"),
            published: p,
            computed: gamma.get(x, y),
        })
        .collect();
    for ((name, p), c) in COLUMNS.iter().zip(fixtures::EXAMPLE2_PUBLISHED).zip([d.r0, d.r1, d.r2]) {
        records.push(Record {
            label: name.to_string(),
            published: p,
            computed: c,
        });
    }
    let note = "printed r0 and r2 carry a 5e-5 rounding slip; the printed Gamma coefficients give r0 = 0.28400, r2 = 0.45800";
    Ok(records_output(&records, format, Some(note)))
}

fn table1(format: Format) -> Result<String, Failure> {
    let mut computed = Vec::with_capacity(TABLE1.len());
    for row in TABLE1 {
        let system = fixtures::table1_document(row.n, row.k1, row.k2).resolve()?;
        computed.push(general_distribution(&system.chain, &system.spec)?.as_array());
    }
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("n,k1,k2,column,published,computed,abs_diff\n");
            for (row, c) in TABLE1.iter().zip(&computed) {
                for ((name, p), v) in COLUMNS.iter().zip(row.values).zip(c) {
                    writeln!(
                        out,
                        "{},{},{},{name},{},{},{:.3e}",
                        row.n,
                        row.k1,
                        row.k2,
                        fixed(p),
                        fixed(*v),
                        (p - v).abs()
                    )
                    .unwrap();
                }
            }
            out
        }
        Format::Json => {
            let items: Vec<_> = TABLE1
                .iter()
                .zip(&computed)
                .map(|(row, c)| {
                    json!({
                        "n": row.n, "k1": row.k1, "k2": row.k2,
                        "published": row.values,
                        "computed": c,
                        "max_abs_diff": row.values.iter().zip(c).map(|(p, v)| (p - v).abs()).fold(0.0, f64::max),
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).unwrap())
        }
        Format::Table => {
            let mut rows = vec![["n", "k1", "k2", "", "r0", "r1", "r2", "R1", "R2", "max|diff|"]
                .map(String::from)
                .to_vec()];
            for (row, c) in TABLE1.iter().zip(&computed) {
                let max = row.values.iter().zip(c).map(|(p, v)| (p - v).abs()).fold(0.0, f64::max);
                let mut line = vec![row.n.to_string(), row.k1.to_string(), row.k2.to_string(), "computed".into()];
                line.extend(c.iter().map(|v| fixed(*v)));
                line.push(format!("{max:.2e}"));
                rows.push(line);
                let mut line = vec![String::new(), String::new(), String::new(), "published".into()];
                line.extend(row.values.iter().map(|v| fixed(*v)));
                line.push(String::new());
                rows.push(line);
            }
            aligned(&rows)
        }
    })
}

pub fn table(builtin: Builtin, format: Format) -> Result<Output, Failure> {
    let text = match builtin {
        Builtin::Example1 => example1(format)?,
        Builtin::Example2 => example2(format)?,
        Builtin::Table1 => table1(format)?,
    };
    Ok(Output::ok(text))
}

const BENCH_SEED: u64 = 2024;

pub fn bench(nmax: usize, reps: usize) -> Result<Output, Failure> {
    if nmax < 2 {
        return Err(Failure::new(3, "--nmax must be at least 2"));
    }
    let reps = reps.max(1);
    let full = random_chain(nmax, BENCH_SEED)?;
    let mut out = String::from("method,n,median_ns\n");
    for n in geometric_grid(nmax) {
        let chain = full.prefix(n)?;
        let half = n.div_ceil(2);
        let increasing = SystemSpec::new(n, half, half)?;
        let t = median_ns(reps, || pgf_univariate(&chain, Level::Perfect));
        writeln!(out, "pgf-uni,{n},{t}").unwrap();
        let t = median_ns(reps, || pgf_bivariate(&chain));
        writeln!(out, "pgf,{n},{t}").unwrap();
        if n <= subset_limit(&increasing) {
            let t = median_ns(reps, || subset_distribution(&chain, &increasing));
            writeln!(out, "subset,{n},{t}").unwrap();
        }
        if n <= MAX_BRUTE_FORCE_N {
            let t = median_ns(reps, || tristate_kofn::oracle::brute_force_joint(&chain));
            writeln!(out, "brute,{n},{t}").unwrap();
        }
    }
    Ok(Output::ok(out))
}
