//! Parsers for the CLI mini-languages: complex numbers, test-function
//! literals, and character addresses.

use adelic::dirichlet::DirichletCharacter;
use adelic::rational::Rational;
use adelic::schwartz::{ArchFunction, ArchTerm, GlobalTestFunction, StepTerm, TwistedStepFunction};
use num_complex::Complex64;

pub fn usage_err(msg: impl Into<String>) -> String {
    msg.into()
}

/// Accepts `<float>`, `<float>i`, or `<float>[+|-]<float>i`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err(usage_err("empty complex literal"));
    }
    let bad = || format!("malformed complex literal `{text}`");
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // find the split between real and imaginary parts: the last +/-
        // that is neither leading nor part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().map_err(|_| bad())?;
                let im_text = &body[idx..];
                let im: f64 = if im_text == "+" {
                    1.0
                } else if im_text == "-" {
                    -1.0
                } else {
                    im_text.parse().map_err(|_| bad())?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse().map_err(|_| bad())?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse()
        .map_err(|e| format!("bad rational `{text}`: {e}"))
}

/// `gauss:a=<rational>,k=<0|1>` with repeated comma groups allowed for
/// multi-term archimedean parts.
fn parse_arch(part: &str) -> Result<ArchFunction, String> {
    let body = part
        .strip_prefix("gauss:")
        .ok_or_else(|| usage_err(format!("arch part must start with gauss:, got `{part}`")))?;
    let mut scale = 1.0f64;
    let mut degree = 0u8;
    for item in body.split(',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value in `{item}`"))?;
        match key.trim() {
            "a" => scale = parse_rational(value)?.to_f64(),
            "k" => {
                degree = match value.trim() {
                    "0" => 0,
                    "1" => 1,
                    other => return Err(format!("degree k must be 0 or 1, got `{other}`")),
                }
            }
            other => return Err(format!("unknown arch key `{other}`")),
        }
    }
    if scale.is_nan() || scale <= 0.0 {
        return Err(usage_err("gaussian scale a must be positive"));
    }
    ArchFunction::new(vec![ArchTerm {
        coeff: Complex64::new(1.0, 0.0),
        degree,
        scale,
    }])
    .map_err(|e| e.to_string())
}

/// `step:p=<prime>;(c=<cplx>,b=<rat>,a=<rat>,n=<int>);...`
fn parse_step(part: &str) -> Result<TwistedStepFunction, String> {
    let body = part
        .strip_prefix("step:")
        .ok_or_else(|| usage_err(format!("finite part must start with step:, got `{part}`")))?;
    let mut segments = body.split(';');
    let head = segments.next().unwrap_or_default();
    let p: u64 = head
        .strip_prefix("p=")
        .ok_or_else(|| usage_err("step part must start with p=<prime>"))?
        .trim()
        .parse()
        .map_err(|_| usage_err("bad prime in step part"))?;
    let mut terms = Vec::new();
    for seg in segments {
        let seg = seg.trim();
        if seg.is_empty() {
            continue;
        }
        let inner = seg
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| format!("step term must be parenthesized, got `{seg}`"))?;
        let mut coeff = Complex64::new(1.0, 0.0);
        let mut twist = Rational::zero();
        let mut center = Rational::zero();
        let mut level = 0i64;
        for item in inner.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in `{item}`"))?;
            match key.trim() {
                "c" => coeff = parse_complex(value)?,
                "b" => twist = parse_rational(value)?,
                "a" => center = parse_rational(value)?,
                "n" => {
                    level = value
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad level `{value}`"))?
                }
                other => return Err(format!("unknown step key `{other}`")),
            }
        }
        terms.push(StepTerm {
            coeff,
            twist,
            center,
            level,
        });
    }
    if terms.is_empty() {
        terms.push(StepTerm {
            coeff: Complex64::new(1.0, 0.0),
            twist: Rational::zero(),
            center: Rational::zero(),
            level: 0,
        });
    }
    TwistedStepFunction::new(p, terms).map_err(|e| e.to_string())
}

/// A full test-function literal: parts separated by '|'; omitted parts
/// default to the standard components.
pub fn parse_function(text: Option<&str>, parity: u8) -> Result<GlobalTestFunction, String> {
    let mut f = GlobalTestFunction::standard_for_parity(parity);
    let Some(text) = text else {
        return Ok(f);
    };
    let mut arch: Option<ArchFunction> = None;
    let mut steps: Vec<TwistedStepFunction> = Vec::new();
    for part in text.split('|') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if part.starts_with("gauss:") {
            if arch.is_some() {
                return Err(usage_err("more than one arch part"));
            }
            arch = Some(parse_arch(part)?);
        } else if part.starts_with("step:") {
            steps.push(parse_step(part)?);
        } else {
            return Err(format!("unknown function part `{part}`"));
        }
    }
    if let Some(a) = arch {
        f = GlobalTestFunction::new(a, Default::default()).map_err(|e| e.to_string())?;
    }
    for s in steps {
        f = f.with_finite_part(s);
    }
    Ok(f)
}

/// `(modulus,index)` or `modulus,index`.
pub fn parse_character(text: &str) -> Result<DirichletCharacter, String> {
    let body = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')');
    let (q, k) = body
        .split_once(',')
        .ok_or_else(|| usage_err("character address must be modulus,index"))?;
    let q: u64 = q.trim().parse().map_err(|_| usage_err("bad modulus"))?;
    let k: usize = k.trim().parse().map_err(|_| usage_err("bad index"))?;
    DirichletCharacter::from_index(q, k).map_err(|e| e.to_string())
}
