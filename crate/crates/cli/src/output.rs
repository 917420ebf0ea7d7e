use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use braidshuffle::report::Counterexample;
use braidshuffle::{Element, Rational, Scalar};
use serde::Serialize;
use serde_json::Value;

/// Anything that should end the run with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// The stable `--json` schema.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub counterexamples: Vec<Counterexample>,
    /// Milliseconds per phase.
    pub timings: BTreeMap<String, f64>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value) -> Self {
        Self {
            command,
            inputs,
            result: Value::Null,
            counterexamples: Vec::new(),
            timings: BTreeMap::new(),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Runs `f`, recording its wall time under `name`.
    pub fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(!self.counterexamples.is_empty())
    }

    /// Writes the report to stdout. A closed pipe (`| head`) is not an error.
    pub fn print(&self, json: bool) {
        let mut out = std::io::stdout().lock();
        let _ = self.write_to(&mut out, json);
    }

    fn write_to(&self, out: &mut impl Write, json: bool) -> io::Result<()> {
        if json {
            let text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
            return writeln!(out, "{text}");
        }
        for l in &self.lines {
            writeln!(out, "{l}")?;
        }
        for c in &self.counterexamples {
            writeln!(out, "counterexample: {c}")?;
        }
        out.flush()
    }
}

/// How scalars are printed: symbolically, or evaluated at `q = q0`.
#[derive(Debug, Clone)]
pub struct Numeric(pub Option<Rational>);

impl Numeric {
    pub fn scalar(&self, s: &Scalar) -> Result<String, UsageError> {
        match &self.0 {
            None => Ok(s.to_string()),
            Some(q0) => Ok(Scalar::from_rational(s.specialize(q0)?).to_string()),
        }
    }

    pub fn element(&self, x: &Element) -> Result<String, UsageError> {
        let Some(q0) = &self.0 else {
            return Ok(x.to_string());
        };
        let mut terms = braidshuffle::LinComb::zero();
        for (w, c) in x.terms() {
            terms.add_term(w.clone(), Scalar::from_rational(c.specialize(q0)?));
        }
        Ok(Element::from_terms(x.dim(), terms)?.to_string())
    }
}

pub fn parse_q(text: &str) -> Result<Rational, String> {
    match braidshuffle::scalar::scalar_parse(text) {
        Ok(Scalar::Rational(r)) => Ok(r),
        Ok(_) => Err(format!("--q needs a rational number, got {text}")),
        Err(e) => Err(e.to_string()),
    }
}
