//! The flat `key = value` system file.
//!
//! ```text
//! [system]
//! # comments run to the end of the line
//! n1 = 2
//! n2 = 1
//! F1 = x*y - 1
//! F2 = y - 1
//! H  = x - y
//! ```
//!
//! `H`, `precision`, `seed` and `radius` are optional; the section header
//! may be omitted.

use std::str::FromStr;

use bicount::fibercount::line_coefficients;
use bicount::poly::{parse_poly, BivarPoly, PolySystem};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile {
    pub system: PolySystem,
    pub line: Option<BivarPoly>,
    pub precision: Option<f64>,
    pub seed: Option<u64>,
    pub radius: Option<f64>,
}

#[derive(Default)]
struct Raw {
    n1: Option<(usize, u32)>,
    n2: Option<(usize, u32)>,
    f1: Option<(usize, String)>,
    f2: Option<(usize, String)>,
    h: Option<(usize, String)>,
    precision: Option<f64>,
    seed: Option<u64>,
    radius: Option<f64>,
}

fn format_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Format { line, message: message.into() }
}

fn set<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(format_err(line, format!("duplicate key `{key}`")));
    }
    *slot = Some(value);
    Ok(())
}

fn number<T: FromStr>(value: &str, line: usize, key: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| format_err(line, format!("`{key}` expects a number, got {value:?}")))
}

fn positive(value: &str, line: usize, key: &str) -> Result<f64, CliError> {
    let x: f64 = number(value, line, key)?;
    if !(x.is_finite() && x > 0.0) {
        return Err(format_err(line, format!("`{key}` must be a positive finite number")));
    }
    Ok(x)
}

fn poly(entry: &(usize, String), bound: u32, key: &str) -> Result<BivarPoly, CliError> {
    parse_poly(&entry.1, bound).map_err(|e| format_err(entry.0, format!("{key}: {e}")))
}

impl FromStr for SystemFile {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let mut raw = Raw::default();
        let mut seen_key = false;
        for (idx, full) in text.lines().enumerate() {
            let line = idx + 1;
            let content = full.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(section) = content.strip_prefix('[') {
                let name = section
                    .strip_suffix(']')
                    .ok_or_else(|| format_err(line, "unterminated section header"))?;
                if name.trim() != "system" || seen_key {
                    return Err(format_err(line, format!("unexpected section [{}]", name.trim())));
                }
                continue;
            }
            let (key, value) =
                content.split_once('=').ok_or_else(|| format_err(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(format_err(line, format!("empty value for `{key}`")));
            }
            seen_key = true;
            match key {
                "n1" => set(&mut raw.n1, (line, number(value, line, key)?), line, key)?,
                "n2" => set(&mut raw.n2, (line, number(value, line, key)?), line, key)?,
                "F1" => set(&mut raw.f1, (line, value.to_string()), line, key)?,
                "F2" => set(&mut raw.f2, (line, value.to_string()), line, key)?,
                "H" => set(&mut raw.h, (line, value.to_string()), line, key)?,
                "precision" => set(&mut raw.precision, positive(value, line, key)?, line, key)?,
                "seed" => set(&mut raw.seed, number(value, line, key)?, line, key)?,
                "radius" => set(&mut raw.radius, positive(value, line, key)?, line, key)?,
                _ => return Err(format_err(line, format!("unknown key `{key}`"))),
            }
        }
        let last = text.lines().count();
        let missing = |key: &str| format_err(last, format!("missing key `{key}`"));
        let (l1, n1) = raw.n1.ok_or_else(|| missing("n1"))?;
        let (l2, n2) = raw.n2.ok_or_else(|| missing("n2"))?;
        for (l, n, key) in [(l1, n1, "n1"), (l2, n2, "n2")] {
            if n == 0 {
                return Err(format_err(l, format!("`{key}` must be at least 1")));
            }
        }
        let f1 = poly(raw.f1.as_ref().ok_or_else(|| missing("F1"))?, n1, "F1")?;
        let f2 = poly(raw.f2.as_ref().ok_or_else(|| missing("F2"))?, n2, "F2")?;
        let line = match &raw.h {
            Some(entry) => {
                let h = poly(entry, 1, "H")?;
                line_coefficients(&h).map_err(|e| format_err(entry.0, e.to_string()))?;
                Some(h)
            }
            None => None,
        };
        Ok(SystemFile {
            system: PolySystem::new(n1, n2, &f1, &f2)?,
            line,
            precision: raw.precision,
            seed: raw.seed,
            radius: raw.radius,
        })
    }
}

/// Renders a system in the file format, readable back by [`SystemFile`].
pub fn render(system: &PolySystem, line: Option<&BivarPoly>) -> String {
    let mut out =
        format!("[system]\nn1 = {}\nn2 = {}\nF1 = {}\nF2 = {}\n", system.n1, system.n2, system.f1, system.f2);
    if let Some(h) = line {
        out.push_str(&format!("H = {h}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_and_without_header() {
        let a: SystemFile =
            "[system]\nn1 = 2\nn2 = 1\nF1 = x*y - 1 # hyperbola\nF2 = y - 1\nH = x - y\n".parse().unwrap();
        let b: SystemFile = "n2=1\nn1=2\n\nF2=y-1\nF1=X1*X2-1\nH=X1-X2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.system.to_string(), "n=(2, 1): F1 = x*y - 1, F2 = y - 1");
    }

    #[test]
    fn settings() {
        let f: SystemFile = "n1=1\nn2=1\nF1=x\nF2=y\nprecision=1e-6\nseed=7\nradius=4".parse().unwrap();
        assert_eq!((f.precision, f.seed, f.radius), (Some(1e-6), Some(7), Some(4.0)));
    }

    #[test]
    fn rejects() {
        for (text, line) in [
            ("n1=1\nn2=1\nF1=x\nF2=y\nfoo=1", 5),
            ("n1=1\nn1=1\nn2=1\nF1=x\nF2=y", 2),
            ("n1=1\nn2=1\nF1=x\nF2=y\nH=x+1", 5),
            ("n1=1\nn2=1\nF1=x\nF2=y\nH=0", 5),
            ("n1=1\nn2=1\nF1=x^2\nF2=y", 3),
            ("n1=1\nn2=1\nF1=x\n", 3),
            ("n1=1\n[other]\nn2=1\nF1=x\nF2=y", 2),
            ("n1=0\nn2=1\nF1=1\nF2=y", 1),
            ("n1=1\nn2=1\nF1=x\nF2=y\nprecision=-1", 5),
            ("n1 1", 1),
        ] {
            match text.parse::<SystemFile>() {
                Err(CliError::Format { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn render_round_trips() {
        let f: SystemFile = "n1=3\nn2=2\nF1=x^2*y - 1/2*x + 3\nF2=(x+y)^2\nH=2*x+y".parse().unwrap();
        let back: SystemFile = render(&f.system, f.line.as_ref()).parse().unwrap();
        assert_eq!(back, f);
    }
}
