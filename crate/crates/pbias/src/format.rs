//! JSON and CSV encodings for functions, spectra, reports and tables.
//!
//! Functions are stored as `{"n": .., "values": [..]}` or, for Boolean
//! tables, `{"n": .., "truth_hex": ".."}` where the hex string is big-endian
//! and bit `k` is `f(k)`. Point `k` has coordinate `i` equal to bit `i - 1`
//! of `k`. CSV floats are written with 17 significant digits, which is exact
//! for doubles; JSON floats use the shortest representation that parses back
//! to the same double.

use std::io::{Read, Write};

use anyhow::{bail, Context};
use pbias_core::inequality::{TalagrandReport, TightnessTable};
use pbias_core::{CubeFunction, DyadicBias, InequalityReport, Measure, Spectrum, SubsetMask};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Bias as written next to results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasRecord {
    pub t: u64,
    pub m: u32,
    pub p: f64,
    /// Requested `p` when the bias came from a dyadic approximation.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p_target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approx_error: Option<f64>,
}

impl BiasRecord {
    pub fn exact(bias: DyadicBias) -> Self {
        Self { t: bias.t(), m: bias.m(), p: bias.p(), p_target: None, approx_error: None }
    }

    pub fn bias(&self) -> anyhow::Result<DyadicBias> {
        Ok(DyadicBias::new(self.t, self.m)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub truth_hex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bias: Option<BiasRecord>,
}

impl FunctionFile {
    pub fn from_function(f: &CubeFunction) -> Self {
        Self { n: f.n(), values: Some(f.values().to_vec()), truth_hex: None, bias: None }
    }

    /// Boolean tables are written as hex, anything else as values.
    pub fn compact(f: &CubeFunction) -> Self {
        if f.is_boolean() {
            Self { n: f.n(), values: None, truth_hex: Some(truth_hex(f)), bias: None }
        } else {
            Self::from_function(f)
        }
    }

    pub fn to_function(&self) -> anyhow::Result<CubeFunction> {
        match (&self.values, &self.truth_hex) {
            (Some(values), None) => Ok(CubeFunction::from_values(self.n, values.clone())?),
            (None, Some(hex)) => parse_truth_hex(self.n, hex),
            (Some(_), Some(_)) => bail!("function file has both `values` and `truth_hex`"),
            (None, None) => bail!("function file needs `values` or `truth_hex`"),
        }
    }
}

/// Big-endian hex of the truth table; bit `k` is `f(k)`.
pub fn truth_hex(f: &CubeFunction) -> String {
    let bits: Vec<bool> = f.values().iter().map(|&v| v == 1.0).collect();
    let digits = bits.len().div_ceil(4);
    (0..digits)
        .rev()
        .map(|d| {
            let nibble = (0..4).filter(|&b| bits.get(4 * d + b).copied().unwrap_or(false)).map(|b| 1u32 << b).sum();
            char::from_digit(nibble, 16).expect("nibble is below 16")
        })
        .collect()
}

pub fn parse_truth_hex(n: u32, hex: &str) -> anyhow::Result<CubeFunction> {
    let len = 1usize << n;
    let digits: Vec<u32> = hex
        .trim()
        .trim_start_matches("0x")
        .chars()
        .rev()
        .map(|c| c.to_digit(16).with_context(|| format!("`{c}` is not a hex digit")))
        .collect::<anyhow::Result<_>>()?;
    if digits.len() != len.div_ceil(4) {
        bail!("truth table for n={n} needs {} hex digits, got {}", len.div_ceil(4), digits.len());
    }
    if len < 4 && digits[0] >> len != 0 {
        bail!("truth table sets bits beyond the {len} points of the cube");
    }
    let values = (0..len).map(|k| f64::from((digits[k / 4] >> (k % 4)) & 1)).collect();
    Ok(CubeFunction::from_values(n, values)?)
}

pub fn read_function(reader: impl Read) -> anyhow::Result<CubeFunction> {
    let file: FunctionFile = serde_json::from_reader(reader).context("parsing function JSON")?;
    file.to_function()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub n: u32,
    pub p: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bias: Option<BiasRecord>,
    /// `hat f(S)` at index `S` (coordinate `i` is bit `i - 1`).
    pub coefficients: Vec<f64>,
}

impl SpectrumFile {
    pub fn new(spectrum: &Spectrum, bias: Option<BiasRecord>) -> Self {
        Self { n: spectrum.n(), p: spectrum.measure().p(), bias, coefficients: spectrum.coeffs().to_vec() }
    }

    pub fn to_spectrum(&self) -> anyhow::Result<Spectrum> {
        let measure = match &self.bias {
            Some(b) => Measure::from(b.bias()?),
            None => Measure::real(self.p)?,
        };
        Ok(Spectrum::new(self.n, measure, self.coefficients.clone())?)
    }
}

/// `subset_mask,size,coefficient` rows.
pub fn write_spectrum_csv(spectrum: &Spectrum, out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["subset_mask", "size", "coefficient"])?;
    for (s, c) in spectrum.coeffs().iter().enumerate() {
        w.write_record([s.to_string(), s.count_ones().to_string(), float(*c)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_spectrum(reader: impl Read) -> anyhow::Result<Spectrum> {
    let file: SpectrumFile = serde_json::from_reader(reader).context("parsing spectrum JSON")?;
    file.to_spectrum()
}

/// Fixed 17-significant-digit rendering.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRecord {
    pub name: &'static str,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: Option<f64>,
    pub verdict: &'static str,
    pub in_hypothesis: bool,
}

impl From<&InequalityReport> for ReportRecord {
    fn from(r: &InequalityReport) -> Self {
        let params = r.params.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect();
        Self {
            name: r.name,
            params,
            lhs: r.lhs,
            rhs: r.rhs,
            ratio: r.ratio,
            verdict: r.verdict.as_str(),
            in_hypothesis: r.in_hypothesis,
        }
    }
}

pub fn write_reports(reports: &[InequalityReport], format: Format, out: impl Write) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
            write_json(&records, out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["name", "params", "lhs", "rhs", "ratio", "verdict", "in_hypothesis"])?;
            for r in reports {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", float(*v))).collect();
                w.write_record([
                    r.name.to_string(),
                    params.join(";"),
                    float(r.lhs),
                    float(r.rhs),
                    optional_float(r.ratio),
                    r.verdict.as_str().to_string(),
                    r.in_hypothesis.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

/// The ratio-only boundary report followed by its explicit transfer steps.
pub fn talagrand_reports(r: &TalagrandReport) -> Vec<InequalityReport> {
    std::iter::once(r.main.clone()).chain(r.explicit_steps().cloned()).collect()
}

pub fn write_tightness(table: &TightnessTable, format: Format, out: impl Write) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|r| serde_json::json!({"quantity": r.quantity, "exact": r.exact, "asymptotic": r.asymptotic, "ratio": r.ratio}))
                .collect();
            let doc = serde_json::json!({
                "n": table.n,
                "p": table.p,
                "k": table.k,
                "measure_of_set": table.measure_of_set,
                "rows": rows,
            });
            write_json(&doc, out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "p", "quantity", "exact", "asymptotic", "ratio"])?;
            for r in &table.rows {
                w.write_record([
                    table.n.to_string(),
                    float(table.p),
                    r.quantity.to_string(),
                    float(r.exact),
                    float(r.asymptotic),
                    float(r.ratio),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, mut out: impl Write) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Label of a subset for human-facing output, e.g. `{1,3}`.
pub fn subset_label(s: usize) -> String {
    SubsetMask::from(s).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pbias_core::{named_family, transform, Family};

    #[test]
    fn truth_hex_round_trip() {
        let f = named_family(&Family::Majority, 3).unwrap();
        assert_eq!(truth_hex(&f), "e8");
        assert_eq!(parse_truth_hex(3, "e8").unwrap(), f);
        let d = named_family(&Family::Dictator { coord: 1 }, 1).unwrap();
        assert_eq!(truth_hex(&d), "2");
        assert!(parse_truth_hex(1, "4").is_err());
        assert!(parse_truth_hex(3, "e").is_err());
        for n in 0..=6 {
            let f = pbias_core::oracle::random_instance(pbias_core::oracle::InstanceKind::RandomBoolean, n, 9).unwrap();
            assert_eq!(parse_truth_hex(n, &truth_hex(&f)).unwrap(), f);
        }
    }

    #[test]
    fn function_file_forms() {
        let f = CubeFunction::from_values(1, vec![0.25, -1.0]).unwrap();
        let json = serde_json::to_string(&FunctionFile::compact(&f)).unwrap();
        assert_eq!(json, r#"{"n":1,"values":[0.25,-1.0]}"#);
        let back: FunctionFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_function().unwrap(), f);
        let both: FunctionFile = serde_json::from_str(r#"{"n":1,"values":[0,1],"truth_hex":"2"}"#).unwrap();
        assert!(both.to_function().is_err());
    }

    #[test]
    fn spectrum_file_round_trip() {
        let b = DyadicBias::new(3, 3).unwrap();
        let f = named_family(&Family::Majority, 3).unwrap();
        let s = transform(&f, b);
        let json = serde_json::to_string(&SpectrumFile::new(&s, Some(BiasRecord::exact(b)))).unwrap();
        let back = read_spectrum(json.as_bytes()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        let x = 0.1 + 0.2;
        assert_eq!(float(x), "3.0000000000000004e-1");
        assert_eq!(float(x).parse::<f64>().unwrap(), x);
    }
}
