//! Text formats consumed and produced by the CLI: exact scalars, the
//! alphabet and poset file formats, survival CSVs, and decimal rendering
//! of exact rationals. All parse errors carry enough position information
//! to be actionable (`line N: …`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use finprod::applications::SurvivalRecord;
use finprod::heap::LabeledPoset;
use finprod::trace::IndependenceAlphabet;

/// Parses an exact rational scalar: `p/q`, a decimal literal (converted
/// exactly, e.g. `0.25` → 1/4), or a plain integer. Signs are accepted on
/// any form.
pub fn parse_rational(raw: &str) -> Result<BigRational, String> {
    let s = raw.trim();
    if s.is_empty() {
        return Err("empty scalar".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let numerator = BigInt::from_str(num.trim())
            .map_err(|_| format!("invalid numerator in {raw:?}"))?;
        let denominator = BigInt::from_str(den.trim())
            .map_err(|_| format!("invalid denominator in {raw:?}"))?;
        if denominator.is_zero() {
            return Err(format!("zero denominator in {raw:?}"));
        }
        return Ok(BigRational::new(numerator, denominator));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_digits, frac_digits) = body.split_once('.').unwrap_or((body, ""));
    let all_digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(format!("no digits in scalar {raw:?}"));
    }
    if !all_digits(int_digits) || !all_digits(frac_digits) {
        return Err(format!("invalid scalar {raw:?}"));
    }
    let digits = format!("{int_digits}{frac_digits}");
    let numerator = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
        .expect("digits were validated");
    let denominator = BigInt::from(10u8).pow(frac_digits.len() as u32);
    let magnitude = BigRational::new(numerator, denominator);
    Ok(if negative { -magnitude } else { magnitude })
}

/// Renders an exact rational as a decimal with at most `precision`
/// fractional digits, rounding half away from zero and trimming trailing
/// zeros: 3/4 → `0.75`, 0 → `0`, 1/3 at precision 6 → `0.333333`.
pub fn format_decimal(value: &BigRational, precision: u32) -> String {
    let negative = value.is_negative();
    let magnitude = value.abs();
    let scale = BigInt::from(10u8).pow(precision);
    let half = BigRational::new(BigInt::one(), BigInt::from(2u8));
    let scaled = (magnitude * BigRational::from_integer(scale.clone()) + half)
        .floor()
        .to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut out = String::new();
    if negative && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    let padded = format!("{:0>width$}", frac_part.to_string(), width = precision as usize);
    let trimmed = padded.trim_end_matches('0');
    if !trimmed.is_empty() {
        out.push('.');
        out.push_str(trimmed);
    }
    out
}

fn single_char(token: &str, line_no: usize) -> Result<char, String> {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(format!("line {line_no}: letter {token:?} must be a single character")),
    }
}

/// Parses an independence alphabet. Line 1 lists the letters separated by
/// whitespace; each later nonempty line names two letters forming an
/// independent pair. Letters are single characters.
pub fn parse_alphabet(text: &str) -> Result<IndependenceAlphabet<char>, String> {
    let mut lines = text.lines().enumerate();
    let mut letters = Vec::new();
    if let Some((_, first)) = lines.next() {
        for token in first.split_whitespace() {
            letters.push(single_char(token, 1)?);
        }
    }
    let mut pairs = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            [a, b] => pairs.push((single_char(a, line_no)?, single_char(b, line_no)?)),
            _ => {
                return Err(format!(
                    "line {line_no}: expected two letters forming an independent pair"
                ))
            }
        }
    }
    IndependenceAlphabet::new(letters, pairs).map_err(|e| e.to_string())
}

/// Parses a poset file: `node <name> <label>` declares a node with an
/// integer label, `lt <a> <b>` declares `a < b` (cover pairs suffice; the
/// closure is taken). Blank lines are ignored. An empty file is the empty
/// poset.
pub fn parse_poset(text: &str) -> Result<LabeledPoset<String, BigInt>, String> {
    let mut labels = Vec::new();
    let mut relations = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            ["node", name, label] => {
                let label = BigInt::from_str(label)
                    .map_err(|_| format!("line {line_no}: invalid integer label {label:?}"))?;
                labels.push((name.to_string(), label));
            }
            ["lt", a, b] => relations.push((a.to_string(), b.to_string())),
            _ => {
                return Err(format!(
                    "line {line_no}: expected `node <name> <label>` or `lt <a> <b>`"
                ))
            }
        }
    }
    LabeledPoset::new(labels, relations).map_err(|e| e.to_string())
}

/// Parses a survival CSV: exact header `time,event`, then one
/// `time,event` record per line with a non-negative rational time and an
/// event flag of `1` (event) or `0` (censored). Blank lines are ignored;
/// `\r\n` endings are tolerated.
pub fn parse_survival_csv(text: &str) -> Result<Vec<SurvivalRecord>, String> {
    let mut lines = text.lines().enumerate();
    let header = lines
        .next()
        .map(|(_, l)| l.trim_end_matches('\r').trim())
        .ok_or_else(|| "empty file: expected header `time,event`".to_string())?;
    if header != "time,event" {
        return Err(format!("line 1: expected header `time,event`, found {header:?}"));
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        let (time_field, event_field) = line
            .split_once(',')
            .ok_or_else(|| format!("line {line_no}: expected `time,event`"))?;
        let time = parse_rational(time_field).map_err(|msg| format!("line {line_no}: {msg}"))?;
        if time.is_negative() {
            return Err(format!("line {line_no}: negative time"));
        }
        let event = match event_field.trim() {
            "1" => true,
            "0" => false,
            other => {
                return Err(format!(
                    "line {line_no}: event flag must be 0 or 1, found {other:?}"
                ))
            }
        };
        records.push(SurvivalRecord { time, event });
    }
    Ok(records)
}

/// Renders a survival curve as CSV with header `t,s`, one step per row in
/// ascending time, both columns as decimals with the given precision.
pub fn render_curve(curve: &finprod::applications::SurvivalCurve, precision: u32) -> String {
    let mut out = String::from("t,s\n");
    for (time, value) in curve.steps() {
        out.push_str(&format_decimal(time, precision));
        out.push(',');
        out.push_str(&format_decimal(value, precision));
        out.push('\n');
    }
    out
}
