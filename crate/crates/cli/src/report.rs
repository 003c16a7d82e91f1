//! Report assembly and rendering.

use std::fmt::Write as _;

use maxmin::{Coupling, Rational};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::args::Format;
use crate::input::Inputs;

fn approx(x: &Rational) -> Value {
    let v = (x.to_f64() * 1e4).round() / 1e4;
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// Ordered result fields; rationals get a rounded `_approx` mirror.
#[derive(Default)]
pub struct Results {
    fields: Map<String, Value>,
}

impl Results {
    pub fn rat(&mut self, key: &str, x: &Rational) -> &mut Self {
        self.fields.insert(key.into(), Value::String(x.to_string()));
        self.fields.insert(format!("{key}_approx"), approx(x));
        self
    }

    pub fn rats<'a>(&mut self, key: &str, xs: impl IntoIterator<Item = &'a Rational>) -> &mut Self {
        let xs: Vec<&Rational> = xs.into_iter().collect();
        self.fields
            .insert(key.into(), Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect()));
        self.fields
            .insert(format!("{key}_approx"), Value::Array(xs.iter().map(|x| approx(x)).collect()));
        self
    }

    pub fn put(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.fields
            .insert(key.into(), serde_json::to_value(v).expect("result fields serialize"));
        self
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Coupling>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: Vec<String>, digest: String, results: Results, witness: Option<Coupling>, elapsed_ms: f64) -> Self {
        Report {
            command,
            inputs_digest: digest,
            results: results.fields,
            witness,
            elapsed_ms: (elapsed_ms * 1e3).round() / 1e3,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let width = self
            .results
            .keys()
            .filter(|k| !k.ends_with("_approx"))
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("digest".len());
        let _ = writeln!(out, "{:width$}  {}", "command", self.command.join(" "));
        let _ = writeln!(out, "{:width$}  {}", "digest", self.inputs_digest);
        for (k, v) in &self.results {
            if k.ends_with("_approx") {
                continue;
            }
            let shown = match (v, self.results.get(&format!("{k}_approx"))) {
                (Value::String(s), Some(a)) => format!("{s} (~{a})"),
                (Value::Array(xs), Some(Value::Array(approx))) => xs
                    .iter()
                    .zip(approx)
                    .map(|(x, a)| format!("{} (~{a})", x.as_str().unwrap_or_default()))
                    .collect::<Vec<_>>()
                    .join(", "),
                (Value::String(s), None) => s.clone(),
                (other, _) => other.to_string(),
            };
            let _ = writeln!(out, "{k:width$}  {shown}");
        }
        if let Some(c) = &self.witness {
            let _ = writeln!(out, "\nwitness ({} chains)", c.len());
            let _ = writeln!(out, "{:>14}  values", "mass");
            for chain in &c.chains {
                let vals: Vec<String> = chain.values.iter().map(Rational::to_string).collect();
                let _ = writeln!(out, "{:>14}  {}", chain.mass.to_string(), vals.join(" "));
            }
        }
        let _ = writeln!(out, "{:width$}  {:.3} ms", "elapsed", self.elapsed_ms);
        out
    }
}

/// SHA-256 over the result-relevant parameters and every input file.
pub fn digest(params: &[(&str, String)], inputs: &Inputs) -> String {
    let mut h = Sha256::new();
    for (k, v) in params {
        h.update(k.as_bytes());
        h.update(b"=");
        h.update(v.as_bytes());
        h.update(b"\n");
    }
    for (_, bytes) in &inputs.files {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}
