//! Text formats: complex literals, fixed-precision JSON, and the signal and
//! sweep CSV files.

use std::io;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::response::Signal;
use crate::sounding::PhaseSweep;

/// 17 significant digits, lowercase exponent.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (exponents allowed).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("cannot parse `{text}` as a complex number"));
    if s.is_empty() {
        return Err(bad());
    }
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(num(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => num(t)?,
    };
    Ok(Complex64::new(re, im))
}

/// `re+imi` with both parts at full precision.
pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
}

struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Compact JSON with every float written by [`fmt_f64`], plus a newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser).map_err(|source| Error::Json {
        context: "output".into(),
        source,
    })?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads `n,re,im` rows; `n` must count up from zero.
pub fn parse_signal_csv(text: &str, context: &str) -> Result<Signal> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header_err = |reason: String| Error::Csv {
        context: context.to_string(),
        line: 1,
        reason,
    };
    let headers = rdr.headers().map_err(|e| header_err(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["n", "re", "im"] {
        return Err(header_err(format!(
            "expected header `n,re,im`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut samples = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Csv {
            context: context.to_string(),
            line: e.position().map_or(0, |p| p.line() as usize),
            reason: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let err = |reason: String| Error::Csv {
            context: context.to_string(),
            line,
            reason,
        };
        if rec.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", rec.len())));
        }
        let n: usize = rec[0].parse().map_err(|_| err(format!("bad index `{}`", &rec[0])))?;
        if n != samples.len() {
            return Err(err(format!("index {n} out of order, expected {}", samples.len())));
        }
        let re: f64 = rec[1]
            .parse()
            .map_err(|_| err(format!("bad real part `{}`", &rec[1])))?;
        let im: f64 = rec[2]
            .parse()
            .map_err(|_| err(format!("bad imaginary part `{}`", &rec[2])))?;
        samples.push(Complex64::new(re, im));
    }
    Ok(Signal::custom(samples))
}

pub fn read_signal_csv(path: &Path) -> Result<Signal> {
    parse_signal_csv(&read_text(path)?, &path.display().to_string())
}

fn csv_string(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

pub fn signal_csv(samples: &[Complex64]) -> String {
    csv_string(
        &["n", "re", "im"],
        samples
            .iter()
            .enumerate()
            .map(|(n, v)| vec![n.to_string(), fmt_f64(v.re), fmt_f64(v.im)]),
    )
}

pub fn sweep_csv(sweep: &PhaseSweep) -> String {
    csv_string(
        &["theta", "re", "im", "phase_unwrapped"],
        (0..sweep.len()).map(|i| {
            vec![
                fmt_f64(sweep.thetas[i]),
                fmt_f64(sweep.values[i].re),
                fmt_f64(sweep.values[i].im),
                fmt_f64(sweep.unwrapped_phase[i]),
            ]
        }),
    )
}

/// Rows `z_re,z_im,re,im`.
pub fn samples_csv(points: &[(Complex64, Complex64)]) -> String {
    csv_string(
        &["z_re", "z_im", "re", "im"],
        points
            .iter()
            .map(|(z, v)| vec![fmt_f64(z.re), fmt_f64(z.im), fmt_f64(v.re), fmt_f64(v.im)]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        for (text, want) in [
            ("0+1i", c(0.0, 1.0)),
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("3", c(3.0, 0.0)),
            ("0.3+0.4i", c(0.3, 0.4)),
            ("0.3-0.4i", c(0.3, -0.4)),
            ("-2.5i", c(0.0, -2.5)),
            ("1e-3-2E+2i", c(1e-3, -200.0)),
            (" 1 + 2i ", c(1.0, 2.0)),
        ] {
            assert_eq!(parse_complex(text).unwrap(), want, "{text}");
        }
        for bad in ["", "x", "1+", "1+2k", "i+1"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(fmt_f64(-1.0 / 3.0), "-3.3333333333333331e-1");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        let json = to_json(&vec![c(1.0, -0.5)]).unwrap();
        assert_eq!(json, "[[1.0000000000000000e0,-5.0000000000000000e-1]]\n");
        assert!(serde_json::from_str::<serde_json::Value>(&json).is_ok());
    }

    #[test]
    fn signal_round_trip() {
        let x = vec![c(1.0, 0.0), c(-1.0 / 3.0, 0.25)];
        let text = signal_csv(&x);
        assert!(text.starts_with("n,re,im\n"));
        assert_eq!(parse_signal_csv(&text, "x").unwrap().samples, x);
    }

    #[test]
    fn csv_errors_name_the_line() {
        let err = parse_signal_csv("n,re,im\n0,1,0\n1,zz,0\n", "sig.csv").unwrap_err();
        assert_eq!(err.to_string(), "sig.csv, line 3: bad real part `zz`");
        let err = parse_signal_csv("n,re,im\n0,1,0\n2,1,0\n", "sig.csv").unwrap_err();
        assert!(err.to_string().contains("line 3"));
        assert!(parse_signal_csv("t,x\n", "s").is_err());
    }
}
