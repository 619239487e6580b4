//! Scenario files: a flat `key=value` document carrying every scenario
//! constant under its table name, plus optional simulation keys.
//!
//! Numbers are parsed exactly: integers, decimals, scientific notation,
//! power expressions like `2^-64`, and ratios like `1454/7` all become exact
//! rationals with no binary rounding at parse time.

use crate::optimizer::ScenarioConstants;
use crate::simulator::Mode;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing required key {0}")]
    MissingKey(&'static str),
    #[error("key {key}: {message}")]
    BadValue { key: String, message: String },
    #[error("invalid constants: {0}")]
    Invalid(String),
}

/// A parsed scenario: the constraint constants plus optional simulation
/// settings.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub constants: ScenarioConstants,
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
    pub grid: Option<String>,
}

const REQUIRED_KEYS: [&str; 25] = [
    "s_l", "s_u", "r_l", "r_u", "d_l", "d_u", "TVC", "TFC", "alpha", "T", "th", "th_prime",
    "delta", "delta1", "delta2", "delta3", "tau_l", "tau_u", "mu", "epsilon", "report_count",
    "u_d", "u_s", "c", "l",
];

/// Parse one number into an exact rational.
///
/// Accepted forms: `123`, `-4.5`, `2e-12`, `6.02e23`, `2^-64`, and ratios
/// `a/b` of any two of the former.
pub fn parse_number(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n = parse_simple(num.trim())?;
        let d = parse_simple(den.trim())?;
        if d.is_zero() {
            return Err(format!("division by zero in {text:?}"));
        }
        return Ok(n / d);
    }
    parse_simple(text)
}

fn parse_simple(text: &str) -> Result<BigRational, String> {
    if text.is_empty() {
        return Err("empty number".into());
    }
    if let Some((base, exp)) = text.split_once('^') {
        let base: BigInt = base
            .trim()
            .parse()
            .map_err(|e| format!("bad power base in {text:?}: {e}"))?;
        let exp: i32 = exp
            .trim()
            .parse()
            .map_err(|e| format!("bad power exponent in {text:?}: {e}"))?;
        if base.is_zero() && exp < 0 {
            return Err(format!("zero base with negative exponent in {text:?}"));
        }
        let mag = BigRational::from_integer(base).pow(exp.unsigned_abs() as i32);
        return Ok(if exp < 0 { mag.recip() } else { mag });
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Result<BigRational, String> {
    let (mantissa, exp10) = match text.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|err| format!("bad exponent in {text:?}: {err}"))?;
            (m, exp)
        }
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in {text:?}"));
    }
    let negative = int_part.starts_with('-');
    let digits: String = format!(
        "{}{}",
        int_part.trim_start_matches(['-', '+']),
        frac_part
    );
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed number {text:?}"));
    }
    let unscaled: BigInt = digits.parse().map_err(|e| format!("{text:?}: {e}"))?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let scale = ten.pow(shift.unsigned_abs() as u32);
    let value = if shift >= 0 {
        BigRational::from_integer(unscaled * scale)
    } else {
        BigRational::new(unscaled, scale)
    };
    Ok(if negative { -value } else { value })
}

fn parse_pairs(text: &str) -> Result<BTreeMap<String, (String, usize)>, ScenarioError> {
    let mut pairs = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ScenarioError::Syntax {
                line: idx + 1,
                message: format!("expected key=value, got {line:?}"),
            });
        };
        let key = key.trim().to_string();
        if pairs
            .insert(key.clone(), (value.trim().to_string(), idx + 1))
            .is_some()
        {
            return Err(ScenarioError::Syntax {
                line: idx + 1,
                message: format!("duplicate key {key:?}"),
            });
        }
    }
    Ok(pairs)
}

fn take_ratio(
    pairs: &BTreeMap<String, (String, usize)>,
    key: &'static str,
) -> Result<BigRational, ScenarioError> {
    let (raw, _) = pairs.get(key).ok_or(ScenarioError::MissingKey(key))?;
    parse_number(raw).map_err(|message| ScenarioError::BadValue {
        key: key.to_string(),
        message,
    })
}

fn take_integer<T: TryFrom<i64>>(
    pairs: &BTreeMap<String, (String, usize)>,
    key: &'static str,
) -> Result<T, ScenarioError> {
    let q = take_ratio(pairs, key)?;
    let bad = |message: String| ScenarioError::BadValue {
        key: key.to_string(),
        message,
    };
    if !q.is_integer() {
        return Err(bad(format!("expected an integer, got {q}")));
    }
    let i = q
        .to_integer()
        .to_i64()
        .ok_or_else(|| bad("integer out of range".into()))?;
    T::try_from(i).map_err(|_| bad(format!("integer {i} out of range")))
}

/// Parse scenario text into validated constants.
pub fn parse_scenario_str(text: &str) -> Result<Scenario, ScenarioError> {
    let pairs = parse_pairs(text)?;
    let constants = ScenarioConstants {
        s_l: take_integer(&pairs, "s_l")?,
        s_u: take_integer(&pairs, "s_u")?,
        r_l: take_integer(&pairs, "r_l")?,
        r_u: take_integer(&pairs, "r_u")?,
        d_l: take_integer(&pairs, "d_l")?,
        d_u: take_integer(&pairs, "d_u")?,
        tvc: take_ratio(&pairs, "TVC")?,
        tfc: take_ratio(&pairs, "TFC")?,
        alpha: take_ratio(&pairs, "alpha")?,
        t: take_ratio(&pairs, "T")?,
        th: take_ratio(&pairs, "th")?,
        th_prime: take_ratio(&pairs, "th_prime")?,
        delta: take_ratio(&pairs, "delta")?,
        delta1: take_ratio(&pairs, "delta1")?,
        delta2: take_ratio(&pairs, "delta2")?,
        delta3: take_ratio(&pairs, "delta3")?,
        tau_l: take_ratio(&pairs, "tau_l")?,
        tau_u: take_ratio(&pairs, "tau_u")?,
        mu: take_ratio(&pairs, "mu")?,
        epsilon: take_ratio(&pairs, "epsilon")?,
        report_count: take_integer(&pairs, "report_count")?,
        u_d: take_integer(&pairs, "u_d")?,
        u_s: take_integer(&pairs, "u_s")?,
        c: take_integer(&pairs, "c")?,
        l: take_integer(&pairs, "l")?,
    };
    constants
        .validate()
        .map_err(|e| ScenarioError::Invalid(e.to_string()))?;
    let seed = match pairs.get("seed") {
        Some((raw, _)) => Some(raw.parse().map_err(|e| ScenarioError::BadValue {
            key: "seed".into(),
            message: format!("{e}"),
        })?),
        None => None,
    };
    let mode = match pairs.get("mode") {
        Some((raw, _)) => Some(raw.parse().map_err(|message| ScenarioError::BadValue {
            key: "mode".into(),
            message,
        })?),
        None => None,
    };
    let grid = pairs.get("grid").map(|(raw, _)| raw.clone());
    Ok(Scenario {
        constants,
        seed,
        mode,
        grid,
    })
}

/// Parse a scenario file from disk.
pub fn parse_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path)?;
    parse_scenario_str(&text)
}

fn render_ratio(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serialize constants so that parsing the output reproduces them exactly.
pub fn write_scenario(c: &ScenarioConstants) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    kv("s_l", c.s_l.to_string());
    kv("s_u", c.s_u.to_string());
    kv("r_l", c.r_l.to_string());
    kv("r_u", c.r_u.to_string());
    kv("d_l", c.d_l.to_string());
    kv("d_u", c.d_u.to_string());
    kv("TVC", render_ratio(&c.tvc));
    kv("TFC", render_ratio(&c.tfc));
    kv("alpha", render_ratio(&c.alpha));
    kv("T", render_ratio(&c.t));
    kv("th", render_ratio(&c.th));
    kv("th_prime", render_ratio(&c.th_prime));
    kv("delta", render_ratio(&c.delta));
    kv("delta1", render_ratio(&c.delta1));
    kv("delta2", render_ratio(&c.delta2));
    kv("delta3", render_ratio(&c.delta3));
    kv("tau_l", render_ratio(&c.tau_l));
    kv("tau_u", render_ratio(&c.tau_u));
    kv("mu", render_ratio(&c.mu));
    kv("epsilon", render_ratio(&c.epsilon));
    kv("report_count", c.report_count.to_string());
    kv("u_d", c.u_d.to_string());
    kv("u_s", c.u_s.to_string());
    kv("c", c.c.to_string());
    kv("l", c.l.to_string());
    out
}

/// The names of all required scenario keys, in canonical order.
pub fn required_keys() -> &'static [&'static str] {
    &REQUIRED_KEYS
}
