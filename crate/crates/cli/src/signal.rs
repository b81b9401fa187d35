//! Two-column `x,f` signal files.

use std::path::Path;

use mexhat_core::transform_engine::SampledSignal;

use crate::error::{CliError, Result};

pub fn read_signal(path: &Path) -> Result<SampledSignal> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
    parse_signal(&text, &path.display().to_string())
}

/// Parses `x,f` rows. The first line may be a header; blank lines are
/// skipped; `x` must strictly increase.
pub fn parse_signal(text: &str, label: &str) -> Result<SampledSignal> {
    let err = |line: usize, msg: String| CliError::Signal {
        path: label.to_string(),
        line,
        msg,
    };
    let mut xs: Vec<f64> = Vec::new();
    let mut fs: Vec<f64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(err(
                line,
                format!("expected 2 fields, found {}", fields.len()),
            ));
        }
        let parsed = (fields[0].parse::<f64>(), fields[1].parse::<f64>());
        let (x, f) = match parsed {
            (Ok(x), Ok(f)) => (x, f),
            _ if line == 1 && fields[0].parse::<f64>().is_err() => continue,
            _ => return Err(err(line, format!("non-numeric value in {content:?}"))),
        };
        if !x.is_finite() || !f.is_finite() {
            return Err(err(line, format!("non-finite value in {content:?}")));
        }
        if let Some(&prev) = xs.last() {
            if x <= prev {
                return Err(err(line, format!("x = {x} does not increase past {prev}")));
            }
        }
        xs.push(x);
        fs.push(f);
    }
    if xs.len() < 2 {
        return Err(err(
            text.lines().count().max(1),
            "signal needs at least two samples".into(),
        ));
    }
    Ok(SampledSignal::new_real(xs, fs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(r: Result<SampledSignal>) -> usize {
        match r {
            Err(CliError::Signal { line, .. }) => line,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn header_is_optional() {
        let a = parse_signal("x,f\n0,1\n1,2\n", "t").unwrap();
        let b = parse_signal("0,1\n1,2\n\n", "t").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.xs(), &[0.0, 1.0]);
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(line_of(parse_signal("x,f\n0,1\n1,abc\n", "t")), 3);
        assert_eq!(line_of(parse_signal("0,1\n1,2\n1,3\n", "t")), 3);
        assert_eq!(line_of(parse_signal("0,1\n1,2,3\n", "t")), 2);
        assert_eq!(line_of(parse_signal("0,1\nx,f\n", "t")), 2);
        assert_eq!(line_of(parse_signal("0,1\n2,NaN\n", "t")), 2);
        assert!(parse_signal("x,f\n0,1\n", "t").is_err());
    }
}
