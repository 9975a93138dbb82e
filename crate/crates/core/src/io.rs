//! JSON instance formats.
//!
//! * graph: `{"vertices": n, "edges": [[u, v], ...]}`
//! * weights: `{"k": k, "uniform": [[z, ...], ...]}` or `{"k": k, "per_edge": [block, ...]}`
//! * matrix: `{"n": n, "entries": [[z, ...], ...]}`
//!
//! A complex entry `z` is either a plain number or `{"re": x, "im": y}`.

use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;

use crate::applications::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, MultiplicityVector};
use crate::weights::EdgeWeights;

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("{}: cannot read file: {e}", path.display())))?;
    parse_json(&text).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::invalid(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::invalid(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| Error::invalid("top level: expected a JSON object"))?
        .get(name)
        .ok_or_else(|| Error::invalid(format!("{name}: missing field")))
}

fn as_index(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::invalid(format!("{at}: expected a non-negative integer, got {v}")))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::invalid(format!("{at}: expected an array")))
}

/// A plain number or `{"re": .., "im": ..}` (missing `im` means 0).
pub fn parse_complex(v: &Value, at: &str) -> Result<Complex64> {
    let num = |x: &Value, part: &str| {
        x.as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| Error::invalid(format!("{at}{part}: malformed number {x}")))
    };
    match v {
        Value::Number(_) => Ok(Complex64::new(num(v, "")?, 0.0)),
        Value::Object(map) => {
            if let Some(key) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(Error::invalid(format!("{at}: unexpected key {key:?} in complex number")));
            }
            let re = map.get("re").ok_or_else(|| Error::invalid(format!("{at}.re: missing")))?;
            let im = map.get("im").map_or(Ok(0.0), |x| num(x, ".im"))?;
            Ok(Complex64::new(num(re, ".re")?, im))
        }
        other => Err(Error::invalid(format!("{at}: malformed number {other}"))),
    }
}

fn parse_square(v: &Value, n: usize, at: &str) -> Result<Vec<Vec<Complex64>>> {
    let rows = as_array(v, at)?;
    if rows.len() != n {
        return Err(Error::invalid(format!("{at}: expected {n} rows, got {}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let row_at = format!("{at}[{i}]");
            let cols = as_array(row, &row_at)?;
            if cols.len() != n {
                return Err(Error::invalid(format!("{row_at}: expected {n} columns, got {}", cols.len())));
            }
            cols.iter().enumerate().map(|(j, z)| parse_complex(z, &format!("{row_at}[{j}]"))).collect()
        })
        .collect()
}

/// Vertex count and raw edge list, before graph validation.
pub fn parse_graph_parts(v: &Value) -> Result<(usize, Vec<(usize, usize)>)> {
    let n = as_index(field(v, "vertices")?, "vertices")?;
    let edges = as_array(field(v, "edges")?, "edges")?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let at = format!("edges[{i}]");
            let pair = as_array(e, &at)?;
            if pair.len() != 2 {
                return Err(Error::invalid(format!("{at}: expected a pair [u, v]")));
            }
            Ok((as_index(&pair[0], &format!("{at}[0]"))?, as_index(&pair[1], &format!("{at}[1]"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((n, edges))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, edges) = parse_graph_parts(&parse_json(text)?)?;
    Graph::new(n, &edges)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let (n, edges) = parse_graph_parts(&read_json(path)?)?;
    Graph::new(n, &edges).map_err(|e| prefix(path, e))
}

/// Host graph for the clique reduction; an empty edge list is allowed.
pub fn read_host(path: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    parse_graph_parts(&read_json(path)?)
}

fn prefix(path: &Path, e: Error) -> Error {
    match e {
        Error::InvalidInput(msg) => Error::invalid(format!("{}: {msg}", path.display())),
        other => other,
    }
}

pub fn graph_to_json(g: &Graph) -> Value {
    serde_json::json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
    })
}

pub fn parse_weights_value(v: &Value, g: &Graph) -> Result<EdgeWeights> {
    let k = as_index(field(v, "k")?, "k")?;
    if k == 0 {
        return Err(Error::invalid("k: color count must be at least 1"));
    }
    let obj = v.as_object().expect("checked by field()");
    match (obj.get("uniform"), obj.get("per_edge")) {
        (Some(u), None) => EdgeWeights::uniform(g, k, &parse_square(u, k, "uniform")?),
        (None, Some(p)) => {
            let blocks = as_array(p, "per_edge")?
                .iter()
                .enumerate()
                .map(|(e, b)| parse_square(b, k, &format!("per_edge[{e}]")))
                .collect::<Result<Vec<_>>>()?;
            EdgeWeights::per_edge(g, k, &blocks)
        }
        (Some(_), Some(_)) => Err(Error::invalid("weights: give exactly one of \"uniform\" and \"per_edge\"")),
        (None, None) => Err(Error::invalid("weights: missing \"uniform\" or \"per_edge\"")),
    }
}

pub fn parse_weights(text: &str, g: &Graph) -> Result<EdgeWeights> {
    parse_weights_value(&parse_json(text)?, g)
}

pub fn read_weights(path: &Path, g: &Graph) -> Result<EdgeWeights> {
    parse_weights_value(&read_json(path)?, g).map_err(|e| prefix(path, e))
}

pub fn complex_to_json(z: Complex64) -> Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

pub fn weights_to_json(w: &EdgeWeights) -> Value {
    let k = w.k();
    let blocks: Vec<Value> = (0..w.edge_count())
        .map(|e| {
            Value::Array(
                (0..k)
                    .map(|i| Value::Array((0..k).map(|j| complex_to_json(w.get(e, i, j))).collect()))
                    .collect(),
            )
        })
        .collect();
    serde_json::json!({ "k": k, "per_edge": blocks })
}

pub fn parse_matrix_value(v: &Value) -> Result<SymmetricMatrix> {
    let n = as_index(field(v, "n")?, "n")?;
    if n == 0 {
        return Err(Error::invalid("n: matrix dimension must be at least 1"));
    }
    SymmetricMatrix::new(parse_square(field(v, "entries")?, n, "entries")?)
}

pub fn parse_matrix(text: &str) -> Result<SymmetricMatrix> {
    parse_matrix_value(&parse_json(text)?)
}

pub fn read_matrix(path: &Path) -> Result<SymmetricMatrix> {
    parse_matrix_value(&read_json(path)?).map_err(|e| prefix(path, e))
}

/// Parses a comma-separated multiplicity list such as `2,1,0`.
pub fn parse_mult_csv(csv: &str) -> Result<Vec<i64>> {
    csv.split(',')
        .enumerate()
        .map(|(i, s)| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::invalid(format!("mult[{i}]: cannot parse {:?} as an integer", s.trim())))
        })
        .collect()
}

pub fn parse_mult(csv: &str, g: &Graph) -> Result<MultiplicityVector> {
    MultiplicityVector::validate(g, &parse_mult_csv(csv)?)
}
