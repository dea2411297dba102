use mhermite::asymptotics::{critical_c, discrete_potential, Phase, SymmetricModel};
use mhermite::checks::{run_suite, Suite};
use mhermite::mhermite::{build_by_recurrence, build_explicit, MultiIndex, WeightSystem};
use mhermite::numerics::{precision, Wide};
use mhermite::quadrature::build_rule;
use mhermite::zeros::{bounding_intervals, hermite_zeros, zero_interval_counts};
use mhermite::Error;
use serde_json::{json, Value};

use crate::output::{Document, Format};
use crate::{Command, Shift};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IsolationFailure { .. }
            | Error::TrackingFailure { .. }
            | Error::Singular
            | Error::ZeroPolynomial => 3,
            Error::InvalidInput(_) | Error::DimensionMismatch { .. } | Error::UnsupportedPhase { .. } => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteArg {
    Identities,
    Table1,
    Asymptotics,
    All,
}

fn number(text: &str) -> Result<Wide, Failure> {
    Wide::parse(text).map_err(Failure::from)
}

fn s(x: &Wide) -> String {
    x.to_string()
}

fn f(x: f64) -> String {
    format!("{x:.17e}")
}

/// Returns `(c, chat)` for the symmetric triple.
fn resolve(shift: &Shift, n: usize) -> Result<(Wide, Wide), Failure> {
    let root_n = Wide::from(n).sqrt();
    match (&shift.c, &shift.chat) {
        (Some(c), None) => {
            let c = number(c)?;
            let chat = &c / &root_n;
            Ok((c, chat))
        }
        (None, Some(chat)) => {
            let chat = number(chat)?;
            Ok((&chat * &root_n, chat))
        }
        _ => Err(usage("give exactly one of --c and --chat")),
    }
}

fn base_meta(doc: &mut Document) {
    doc.meta("precision", precision());
    doc.meta("version", env!("CARGO_PKG_VERSION"));
}

fn triple(n: usize, shift: &Shift) -> Result<(WeightSystem, Wide, Wide), Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let (c, chat) = resolve(shift, n)?;
    Ok((WeightSystem::symmetric(c.clone())?, c, chat))
}

pub fn run(command: &Command, format: Format) -> Result<(Vec<u8>, u8), Failure> {
    let doc = match command {
        Command::Poly { n, c } => poly(n, c)?,
        Command::Zeros { n, shift } => zeros(*n, shift)?,
        Command::Rule { n, shift, raw } => rule(*n, shift, *raw)?,
        Command::Density { chat, samples } => density(chat, *samples)?,
        Command::Transition => transition(),
        Command::Potentials { chat, n, samples } => potentials(chat, *n, *samples)?,
        Command::Check { suite } => {
            let (bytes, passed) = check(*suite);
            return Ok((bytes, if passed { 0 } else { 1 }));
        }
    };
    let bytes = doc.render(format).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    Ok((bytes, 0))
}

fn poly(n: &[usize], c: &[String]) -> Result<Document, Failure> {
    let shifts = c.iter().map(|t| number(t)).collect::<Result<Vec<_>, _>>()?;
    let w = WeightSystem::new(shifts)?;
    let idx = MultiIndex::new(n.to_vec())?;
    let a = build_by_recurrence(&idx, &w)?;
    let b = build_explicit(&idx, &w)?;
    let mut doc = Document::new(&["degree", "recurrence", "explicit", "difference"]);
    base_meta(&mut doc);
    doc.meta("n", json!(n));
    doc.meta(
        "c",
        Value::Array(w.shifts().iter().map(|x| Value::String(s(x))).collect()),
    );
    doc.extra("max_relative_discrepancy", s(&a.relative_distance(&b)));
    for (i, (x, y)) in a.coeffs().iter().zip(b.coeffs()).enumerate() {
        doc.push(vec![i.to_string(), s(x), s(y), s(&(x - y).abs())]);
    }
    eprintln!(
        "max relative discrepancy between methods: {}",
        a.relative_distance(&b).to_sci_string(3)
    );
    Ok(doc)
}

fn zeros(n: usize, shift: &Shift) -> Result<Document, Failure> {
    let (w, c, chat) = triple(n, shift)?;
    let (_, z) = hermite_zeros(&MultiIndex::diagonal(n), &w)?;
    let l = bounding_intervals(n, &c)?;
    let counts = zero_interval_counts(z.as_slice(), &l);
    let mut doc = Document::new(&["k", "zero", "interval"]);
    base_meta(&mut doc);
    doc.meta("n", n).meta("c", s(&c)).meta("chat", s(&chat));
    doc.extra(
        "intervals",
        Value::Array(l.intervals.iter().map(|i| json!([s(&i.lo), s(&i.hi)])).collect()),
    );
    doc.extra("disjoint", l.disjoint);
    doc.extra(
        "counts",
        json!({"I1": counts.k1, "I2": counts.k2, "I3": counts.k3, "outside": counts.outside}),
    );
    for (k, x) in z.zeros.iter().enumerate() {
        let inside: Vec<String> = l
            .intervals
            .iter()
            .enumerate()
            .filter(|(_, i)| i.contains(x))
            .map(|(j, _)| (j + 1).to_string())
            .collect();
        doc.push(vec![(k + 1).to_string(), s(x), inside.join(" ")]);
    }
    eprintln!(
        "interval counts: I1 {}, I2 {}, I3 {}, outside {} (disjoint: {})",
        counts.k1, counts.k2, counts.k3, counts.outside, l.disjoint
    );
    Ok(doc)
}

fn rule(n: usize, shift: &Shift, raw: bool) -> Result<Document, Failure> {
    let (w, c, chat) = triple(n, shift)?;
    let rule = build_rule(n, &w, !raw)?;
    let mut doc = Document::new(&["k", "node", "lambda_1", "lambda_2", "lambda_3"]);
    base_meta(&mut doc);
    doc.meta("n", n)
        .meta("c", s(&c))
        .meta("chat", s(&chat))
        .meta("normalization", if raw { "raw" } else { "normalized" });
    for k in 0..rule.len() {
        let mut row = vec![(k + 1).to_string(), s(&rule.nodes()[k].rounded())];
        row.extend(rule.weights.iter().map(|lam| s(&lam[k].rounded())));
        doc.push(row);
    }
    Ok(doc)
}

fn support_json(model: &SymmetricModel) -> Value {
    let m = model.support();
    json!({
        "phase": m.phase.to_string(),
        "d": m.d.as_ref().map(s),
        "a": m.a.as_ref().map(s),
        "b": s(&m.b),
        "c_star": s(&critical_c()),
    })
}

fn density(chat: &str, samples: usize) -> Result<Document, Failure> {
    if samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let chat = number(chat)?;
    let model = SymmetricModel::new(&chat)?;
    let three = model.support().phase == Phase::ThreeInterval;
    let mut doc = Document::new(&["x", "v", "nu1", "nu2", "nu3"]);
    base_meta(&mut doc);
    doc.meta("chat", s(&chat));
    doc.extra("support", support_json(&model));
    let reach = &model.support().b * Wide::ratio(11, 10);
    let step = Wide::from_i64(2) * &reach / Wide::from(samples - 1);
    for i in 0..samples {
        let x = -&reach + &step * Wide::from(i);
        let d = model.density_sample(&x)?;
        let mut row = vec![s(&x), s(&d.v)];
        row.extend(d.nu.iter().map(|v| if three { s(v) } else { String::new() }));
        doc.push(row);
    }
    Ok(doc)
}

fn transition() -> Document {
    let mut doc = Document::new(&["c_star"]);
    base_meta(&mut doc);
    doc.push(vec![format!("{:.20}", critical_c())]);
    doc
}

fn potentials(chat: &str, n: usize, samples: usize) -> Result<Document, Failure> {
    if n == 0 || samples < 2 {
        return Err(usage("--n must be at least 1 and --samples at least 2"));
    }
    let chat = number(chat)?;
    let model = SymmetricModel::new(&chat)?;
    let nu = model.nu_measures(256)?;
    let ell = model.equilibrium_constants(&nu);
    let w = WeightSystem::symmetric_scaled(chat.clone(), n)?;
    let (_, z) = hermite_zeros(&MultiIndex::diagonal(n), &w)?;
    let groups: Vec<&[Wide]> = z.zeros.chunks(n).collect();
    let mut doc = Document::new(&["x", "u1", "u2", "u3", "d1", "d2", "d3", "comb1", "comb2", "comb3"]);
    base_meta(&mut doc);
    doc.meta("n", n).meta("chat", s(&chat));
    doc.extra("support", support_json(&model));
    doc.extra("ell", json!([f(ell[0]), f(ell[1]), f(ell[2])]));
    let b = model.support().b.to_f64();
    let (lo, hi) = (-b - 1.0, b + 1.0);
    for i in 0..samples {
        let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let mut row = vec![f(x)];
        row.extend(nu.iter().map(|m| f(m.potential(x))));
        for g in &groups {
            row.push(match discrete_potential(g, n, x) {
                Ok(v) => f(v),
                Err(Error::Singular) => String::new(),
                Err(e) => return Err(e.into()),
            });
        }
        row.extend((1..=3).map(|j| f(model.variational_combination(&nu, j, x))));
        doc.push(row);
    }
    Ok(doc)
}

fn check(suite: SuiteArg) -> (Vec<u8>, bool) {
    let suite = match suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Table1 => Suite::Table1,
        SuiteArg::Asymptotics => Suite::Asymptotics,
        SuiteArg::All => Suite::All,
    };
    let results = run_suite(suite);
    let passed = results.iter().all(|r| r.passed);
    for r in &results {
        eprintln!("{}", r.line());
    }
    let report = json!({
        "meta": {"precision": precision(), "version": env!("CARGO_PKG_VERSION")},
        "passed": passed,
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    let mut bytes = serde_json::to_vec_pretty(&report).expect("serializable report");
    bytes.push(b'\n');
    (bytes, passed)
}
