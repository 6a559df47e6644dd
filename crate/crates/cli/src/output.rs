//! Sampled solutions on disk.
//!
//! CSV has a header `x,value` in scalar mode and `x,<blade keys>` (all `2ⁿ`
//! blades, scalar key empty) otherwise. Floats carry 17 significant digits,
//! which round-trips every `f64`. JSON stores the same rows with values in
//! multivector text form.

use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use cliffrac_core::{BladeIndex, CliffordGridFunction, GridFunction, Multivector};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }

    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

/// Grid samples of `ψ`. `n = 0` is scalar mode with one value per row;
/// otherwise each row holds the `2ⁿ` dense blade coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub n: usize,
    pub x: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSolution {
    n: usize,
    rows: Vec<JsonRow>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    x: f64,
    value: JsonValue,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonValue {
    Scalar(f64),
    Multivector(Multivector),
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

impl Solution {
    pub fn from_scalar(f: &GridFunction) -> Self {
        Solution {
            n: 0,
            x: f.grid().points().collect(),
            rows: f.values().iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn from_clifford(f: &CliffordGridFunction) -> Self {
        let grid = f.grid();
        Solution {
            n: f.n(),
            x: grid.points().collect(),
            rows: (0..grid.len())
                .map(|j| f.value_at(j).into_coeffs())
                .collect(),
        }
    }

    fn width(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            1 << self.n
        }
    }

    /// The value at row `j` as a JSON value.
    fn json_value(&self, row: &[f64]) -> JsonValue {
        if self.n == 0 {
            JsonValue::Scalar(row[0])
        } else {
            JsonValue::Multivector(
                Multivector::from_coeffs(self.n, row.to_vec()).expect("row width matches n"),
            )
        }
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        let mut header = vec!["x".to_string()];
        if self.n == 0 {
            header.push("value".to_string());
        } else {
            header.extend((0..self.width() as u32).map(|m| BladeIndex::from_mask(m).key(self.n)));
        }
        writer.write_record(&header).expect("writing to memory");
        for (x, row) in self.x.iter().zip(&self.rows) {
            let record = std::iter::once(fmt_float(*x)).chain(row.iter().map(|&v| fmt_float(v)));
            writer.write_record(record).expect("writing to memory");
        }
        writer.into_inner().expect("writing to memory")
    }

    pub fn to_json(&self) -> Vec<u8> {
        let doc = JsonSolution {
            n: self.n,
            rows: self
                .x
                .iter()
                .zip(&self.rows)
                .map(|(&x, row)| JsonRow {
                    x,
                    value: self.json_value(row),
                })
                .collect(),
        };
        let mut out = serde_json::to_vec_pretty(&doc).expect("solution values are finite");
        out.push(b'\n');
        out
    }

    pub fn encode(&self, format: OutputFormat) -> Vec<u8> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<(), CliError> {
        let io = |source| CliError::Io {
            context: format!("writing {}", path.display()),
            source,
        };
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(io)?;
        }
        let mut file = std::fs::File::create(path).map_err(io)?;
        file.write_all(&self.encode(format)).map_err(io)
    }

    pub fn from_csv(bytes: &[u8]) -> Result<Self, CliError> {
        let bad = |msg: String| CliError::Solution(msg);
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(bytes);
        let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
        if header.get(0) != Some("x") || header.len() < 2 {
            return Err(bad(
                "header must start with `x` followed by value columns".into()
            ));
        }
        let n = if header.len() == 2 && header.get(1) == Some("value") {
            0
        } else {
            let width = header.len() - 1;
            if !width.is_power_of_two() || width < 2 {
                return Err(bad(format!("{width} value columns is not a power of two")));
            }
            let n = width.trailing_zeros() as usize;
            for (m, key) in header.iter().skip(1).enumerate() {
                if key != BladeIndex::from_mask(m as u32).key(n) {
                    return Err(bad(format!(
                        "column {} is {key:?}, expected blade {:?}",
                        m + 1,
                        BladeIndex::from_mask(m as u32).key(n)
                    )));
                }
            }
            n
        };
        let mut solution = Solution {
            n,
            x: Vec::new(),
            rows: Vec::new(),
        };
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| bad(e.to_string()))?;
            let mut values = record.iter().map(|field| {
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| bad(format!("row {}: {field:?}: {e}", line + 1)))
            });
            let x = values
                .next()
                .transpose()?
                .ok_or_else(|| bad(format!("row {} is empty", line + 1)))?;
            solution.x.push(x);
            solution.rows.push(values.collect::<Result<_, _>>()?);
        }
        solution.check()?;
        Ok(solution)
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, CliError> {
        let doc: JsonSolution =
            serde_json::from_slice(bytes).map_err(|e| CliError::Solution(e.to_string()))?;
        let mut solution = Solution {
            n: doc.n,
            x: Vec::new(),
            rows: Vec::new(),
        };
        for row in doc.rows {
            solution.x.push(row.x);
            solution.rows.push(match (row.value, doc.n) {
                (JsonValue::Scalar(v), 0) => vec![v],
                (JsonValue::Multivector(m), n) if m.n() == n => m.into_coeffs(),
                _ => {
                    return Err(CliError::Solution(format!(
                        "row at x = {} does not match n = {}",
                        row.x, doc.n
                    )))
                }
            });
        }
        solution.check()?;
        Ok(solution)
    }

    /// Reads a solution, choosing the parser by extension (CSV by default).
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io {
            context: format!("reading {}", path.display()),
            source,
        })?;
        match OutputFormat::from_path(path).unwrap_or_default() {
            OutputFormat::Csv => Self::from_csv(&bytes),
            OutputFormat::Json => Self::from_json(&bytes),
        }
    }

    fn check(&self) -> Result<(), CliError> {
        if self.x.len() < 2 {
            return Err(CliError::Solution("need at least two rows".into()));
        }
        if let Some(j) = self.rows.iter().position(|r| r.len() != self.width()) {
            return Err(CliError::Solution(format!(
                "row {} has {} values, expected {}",
                j + 1,
                self.rows[j].len(),
                self.width()
            )));
        }
        if self.x.windows(2).any(|w| !(w[0] < w[1])) || self.x.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Solution(
                "x column must be finite and strictly increasing".into(),
            ));
        }
        Ok(())
    }

    /// `ψ(x)` by grid lookup. Exact grid points return stored values; other
    /// points interpolate linearly and set the flag.
    pub fn evaluate(&self, x: f64) -> Result<(Vec<f64>, bool), CliError> {
        let (lo, hi) = (self.x[0], self.x[self.x.len() - 1]);
        if !(lo..=hi).contains(&x) {
            return Err(CliError::Domain(format!(
                "x = {x} lies outside [{lo}, {hi}]"
            )));
        }
        let j = self.x.partition_point(|&p| p < x);
        if self.x[j] == x {
            return Ok((self.rows[j].clone(), false));
        }
        let (x0, x1) = (self.x[j - 1], self.x[j]);
        let t = (x - x0) / (x1 - x0);
        let values = self.rows[j - 1]
            .iter()
            .zip(&self.rows[j])
            .map(|(&a, &b)| (1.0 - t) * a + t * b)
            .collect();
        Ok((values, true))
    }

    /// One line of `eval` output.
    pub fn eval_line(&self, x: f64) -> Result<String, CliError> {
        #[derive(Serialize)]
        struct Line {
            x: f64,
            value: JsonValue,
            interpolated: bool,
        }
        let (values, interpolated) = self.evaluate(x)?;
        let line = Line {
            x,
            value: self.json_value(&values),
            interpolated,
        };
        Ok(serde_json::to_string(&line).expect("finite values"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cliffrac_core::Grid;

    fn sample() -> Solution {
        let grid = Grid::new(0.0, 1.0, 4).unwrap();
        let mut f = CliffordGridFunction::zeros(2, grid).unwrap();
        let blade = BladeIndex::from_mask(0b11);
        f.set_component(
            blade,
            GridFunction::from_fn(grid, |x| 0.1 * x - 1.0 / 3.0).unwrap(),
        )
        .unwrap();
        f.set_component(
            BladeIndex::SCALAR,
            GridFunction::from_fn(grid, |x| -x).unwrap(),
        )
        .unwrap();
        Solution::from_clifford(&f)
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let s = sample();
        let bytes = s.to_csv();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("x,,1,2,12\r\n"), "{text}");
        let back = Solution::from_csv(&bytes).unwrap();
        assert_eq!(
            back.x.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            s.x.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
        for (a, b) in back.rows.iter().zip(&s.rows) {
            assert_eq!(
                a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                b.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn json_round_trip_matches_values() {
        let s = sample();
        let back = Solution::from_json(&s.to_json()).unwrap();
        assert_eq!(back.n, 2);
        for (a, b) in back.rows.iter().zip(&s.rows) {
            for (x, y) in a.iter().zip(b) {
                assert!(x == y);
            }
        }
    }

    #[test]
    fn scalar_csv() {
        let grid = Grid::new(-1.0, 1.0, 2).unwrap();
        let s = Solution::from_scalar(&GridFunction::from_fn(grid, |x| x * x).unwrap());
        let text = String::from_utf8(s.to_csv()).unwrap();
        assert_eq!(text.lines().next().unwrap(), "x,value");
        assert_eq!(Solution::from_csv(text.as_bytes()).unwrap(), s);
    }

    #[test]
    fn evaluation_rules() {
        let s = sample();
        let (v, interp) = s.evaluate(0.25).unwrap();
        assert!(!interp);
        assert_eq!(v, s.rows[1]);
        let (v, interp) = s.evaluate(0.375).unwrap();
        assert!(interp);
        for k in 0..4 {
            assert!((v[k] - 0.5 * (s.rows[1][k] + s.rows[2][k])).abs() < 1e-15);
        }
        assert!(matches!(s.evaluate(1.5), Err(CliError::Domain(_))));
        assert!(s.eval_line(0.0).unwrap().contains("\"interpolated\":false"));
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(Solution::from_csv(b"x,a,b\r\n0,1,2\r\n").is_err());
        assert!(Solution::from_csv(b"x,value\r\n1,0\r\n0,1\r\n").is_err());
        assert!(Solution::from_json(b"{\"n\":1,\"rows\":[]}").is_err());
    }
}
