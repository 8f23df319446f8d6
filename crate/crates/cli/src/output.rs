use num_complex::Complex64;
use revival_core::analysis::{FrDecision, FrTime, Outcome};
use serde::Serialize;

/// Fixed 12-decimal rendering, without negative zero.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.strip_prefix('-').is_some_and(|r| r.bytes().all(|b| b == b'0' || b == b'.')) {
        s[1..].to_string()
    } else {
        s
    }
}

/// `x` rounded to 12 decimals, for JSON numbers.
pub fn rounded(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Coefficients on `1, w, w^2, …` as `3 - w + 2w^3`.
pub fn polynomial(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (j, &c) in coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        match j {
            0 => out.push_str(&a.to_string()),
            _ => {
                if a != 1 {
                    out.push_str(&a.to_string());
                }
                out.push('w');
                if j > 1 {
                    out.push_str(&format!("^{j}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexRecord {
    fn from(z: Complex64) -> Self {
        Self { re: rounded(z.re), im: rounded(z.im) }
    }
}

/// `t = 2π·p/q`.
#[derive(Serialize)]
pub struct TimeRecord {
    pub p: i64,
    pub q: u64,
    pub radians: f64,
}

#[derive(Serialize)]
pub struct EvidenceRecord {
    pub engine: &'static str,
    pub t_star: f64,
    pub max_total: f64,
    pub search_start: f64,
}

#[derive(Serialize)]
pub struct DecisionRecord {
    pub involution: Option<String>,
    pub verdict: String,
    pub all_times: bool,
    pub time: Option<TimeRecord>,
    #[serde(rename = "M")]
    pub m: Option<u64>,
    pub sample_time: Option<f64>,
    pub alpha: Option<ComplexRecord>,
    pub beta: Option<ComplexRecord>,
    pub classification: Option<String>,
    pub witness: Option<String>,
    pub evidence: Option<EvidenceRecord>,
}

impl From<&FrDecision> for DecisionRecord {
    fn from(d: &FrDecision) -> Self {
        let mut record = DecisionRecord {
            involution: d.involution.as_ref().map(|a| a.to_string()),
            verdict: d.verdict().to_string(),
            all_times: false,
            time: None,
            m: None,
            sample_time: None,
            alpha: None,
            beta: None,
            classification: None,
            witness: d.witness().map(|w| w.to_string()),
            evidence: None,
        };
        match &d.outcome {
            Outcome::Yes(c) => {
                match c.time {
                    FrTime::Rational(t) => {
                        record.time = Some(TimeRecord { p: t.p(), q: t.q(), radians: rounded(t.radians()) })
                    }
                    FrTime::AllTimes => record.all_times = true,
                }
                record.m = c.m;
                record.sample_time = Some(rounded(c.sample_time));
                record.alpha = Some(c.alpha.into());
                record.beta = Some(c.beta.into());
                record.classification = Some(c.classification.to_string());
            }
            Outcome::No(_) => {}
            Outcome::UndeterminedExact { evidence, .. } => {
                record.evidence = Some(EvidenceRecord {
                    engine: "spectral",
                    t_star: rounded(evidence.t_star),
                    max_total: rounded(evidence.max_total),
                    search_start: rounded(evidence.search_start),
                })
            }
        }
        record
    }
}
