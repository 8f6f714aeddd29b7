//! Output artifacts: a table plus the metadata needed to reproduce it.
//!
//! Both renderers embed the library version, the parsed run configuration,
//! and the wall-clock time. CSV puts those on `#`-prefixed lines ahead of an
//! RFC 4180 body with floats at 17 significant digits (enough to round-trip
//! an `f64` exactly); JSON emits a single `{meta, rows}` object.

use serde::Serialize;

/// The parsed command line, echoed verbatim into every artifact.
///
/// `seed`, `resolution`, and `rel_tol` are `null` for commands that have no
/// such knob; `parameters` always carries every flag of the subcommand with
/// defaults filled in.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub output_format: String,
    pub seed: Option<u64>,
    pub resolution: Option<usize>,
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub library_version: String,
    pub config: RunConfig,
    pub wall_clock_secs: f64,
    /// Worst-entry defect of the sampled matrix against its defining group
    /// structure, when `--structure-check` was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_residual: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(u64),
    Float(f64),
}

impl Cell {
    fn render(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(x) => fmt_float(x),
        }
    }

    fn to_json(self) -> serde_json::Value {
        match self {
            Cell::Int(v) => v.into(),
            Cell::Float(x) => serde_json::Number::from_f64(x)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
        }
    }
}

#[derive(Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// 17 significant digits in scientific notation: the shortest width that
/// distinguishes every `f64`, so re-running with the same seed reproduces
/// Monte Carlo columns bit-for-bit.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_csv(meta: &Meta, table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&format!("# edgegap {}\n", meta.library_version));
    out.push_str(&format!(
        "# config = {}\n",
        serde_json::to_string(&meta.config).expect("config serializes")
    ));
    out.push_str(&format!("# wall_clock_secs = {:.3}\n", meta.wall_clock_secs));
    if let Some(r) = meta.structure_residual {
        out.push_str(&format!("# structure_residual = {}\n", fmt_float(r)));
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(&table.columns)
        .expect("in-memory csv write");
    for row in &table.rows {
        writer
            .write_record(row.iter().map(|c| c.render()))
            .expect("in-memory csv write");
    }
    let body = writer.into_inner().expect("csv buffer");
    out.push_str(std::str::from_utf8(&body).expect("csv is utf-8"));
    out
}

pub fn render_json(meta: &Meta, table: &Table) -> String {
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut object = serde_json::Map::new();
            for (name, cell) in table.columns.iter().zip(row) {
                object.insert((*name).to_string(), cell.to_json());
            }
            serde_json::Value::Object(object)
        })
        .collect();
    let doc = serde_json::json!({ "meta": meta, "rows": rows });
    format!("{doc:#}\n")
}

/// A single number, or `lo:hi:step` expanded inclusive of `lo` and of every
/// point below `hi + step/2` (so the intended upper endpoint survives
/// floating-point drift).
pub fn parse_reals(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.len() {
        1 => Ok(vec![parse_finite(parts[0])?]),
        3 => {
            let lo = parse_finite(parts[0])?;
            let hi = parse_finite(parts[1])?;
            let step = parse_finite(parts[2])?;
            if !(step > 0.0) {
                return Err(format!("range step must be positive, got {step}"));
            }
            if hi < lo {
                return Err(format!("range upper bound {hi} is below lower bound {lo}"));
            }
            let mut values = Vec::new();
            for k in 0..=1_000_000u64 {
                let v = lo + k as f64 * step;
                if v >= hi + step / 2.0 {
                    return Ok(values);
                }
                values.push(v);
            }
            Err(format!("range '{spec}' expands to more than a million points"))
        }
        _ => Err(format!("'{spec}' is neither a number nor lo:hi:step")),
    }
}

/// Comma-separated nonnegative integers, e.g. `8,32,128`.
pub fn parse_u32_list(spec: &str) -> Result<Vec<u32>, String> {
    spec.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<u32>()
                .map_err(|_| format!("'{piece}' is not a nonnegative integer"))
        })
        .collect()
}

fn parse_finite(piece: &str) -> Result<f64, String> {
    let v: f64 = piece
        .trim()
        .parse()
        .map_err(|_| format!("'{piece}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{piece}' is not finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_17_significant_digits() {
        let s = fmt_float(0.9647700208064073);
        assert_eq!(s, "9.6477002080640728e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.9647700208064073);
        assert_eq!(fmt_float(-1.0), "-1.0000000000000000e0");
    }

    #[test]
    fn ranges_include_lo_and_guarded_hi() {
        assert_eq!(parse_reals("4").unwrap(), vec![4.0]);
        assert_eq!(
            parse_reals("1:8:1").unwrap(),
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]
        );
        let soft = parse_reals("-4:2:0.5").unwrap();
        assert_eq!(soft.len(), 13);
        assert_eq!(soft[0], -4.0);
        assert_eq!(*soft.last().unwrap(), 2.0);
        // 0.1 + 0.2 + ... drift must not drop the endpoint.
        let drifty = parse_reals("0:1:0.1").unwrap();
        assert_eq!(drifty.len(), 11);
    }

    #[test]
    fn bad_ranges_are_rejected() {
        assert!(parse_reals("1:2").is_err());
        assert!(parse_reals("2:1:1").is_err());
        assert!(parse_reals("1:2:0").is_err());
        assert!(parse_reals("1:2:-0.5").is_err());
        assert!(parse_reals("inf").is_err());
        assert!(parse_reals("abc").is_err());
        assert!(parse_u32_list("8,-3").is_err());
        assert_eq!(parse_u32_list("8, 32,128").unwrap(), vec![8, 32, 128]);
    }

    #[test]
    fn csv_layout_is_meta_then_header_then_rows() {
        let meta = Meta {
            library_version: "0.0.0".into(),
            config: RunConfig {
                command: "soft-gap".into(),
                parameters: serde_json::Map::new(),
                output_format: "csv".into(),
                seed: None,
                resolution: Some(60),
                rel_tol: None,
            },
            wall_clock_secs: 0.25,
            structure_residual: None,
        };
        let table = Table {
            columns: vec!["s", "value"],
            rows: vec![vec![Cell::Float(0.5), Cell::Float(0.25)]],
        };
        let text = render_csv(&meta, &table);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# edgegap"));
        assert!(lines[1].starts_with("# config = {"));
        assert!(lines[2].starts_with("# wall_clock_secs"));
        assert_eq!(lines[3], "s,value");
        assert_eq!(lines[4], "5.0000000000000000e-1,2.5000000000000000e-1");
    }

    #[test]
    fn json_is_a_single_meta_rows_object() {
        let meta = Meta {
            library_version: "0.0.0".into(),
            config: RunConfig {
                command: "lis".into(),
                parameters: serde_json::Map::new(),
                output_format: "json".into(),
                seed: Some(7),
                resolution: None,
                rel_tol: None,
            },
            wall_clock_secs: 0.0,
            structure_residual: None,
        };
        let table = Table {
            columns: vec!["mc_mean"],
            rows: vec![vec![Cell::Float(1.0)]],
        };
        let doc: serde_json::Value = serde_json::from_str(&render_json(&meta, &table)).unwrap();
        assert_eq!(doc["meta"]["config"]["seed"], 7);
        assert_eq!(doc["rows"][0]["mc_mean"], 1.0);
        assert!(doc["meta"]["config"]["resolution"].is_null());
    }
}
