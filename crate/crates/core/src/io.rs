//! Dataset formats.
//!
//! * relation JSON: `{"size": n, "labels": [...]?, "pairs": [[a, b], ...]}`
//! * order system JSON: `{"size": n, "orders": [{"keys": [...], "direction": "gain"|"price"}]}`
//! * order system CSV: header row, one column per order (selected by name or index)
//! * point CSV: two numeric columns `x, y`, header optional
//! * summit CSV: `x, h` (real line) or `x, y, h` (plane), header optional
//! * collective JSON: `{"elements": [...], "h": {name: value}, "family": [[name, ...], ...]}`
//!
//! Every parser validates strictly and reports the offending line and field.
//! Every `emit_*` output parses back to an equal value.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::collective::{SubsetFamily, ValuedGroundSet};
use crate::dependence::PointSet2D;
use crate::geoalt::Point;
use crate::induced::{Direction, KeyedOrder, OrderSystem};
use crate::key::Key;
use crate::relation::{ElementSet, FiniteRelation, Universe};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<u64>,
    pub field: Option<String>,
    pub message: String,
}

impl ParseError {
    fn new(line: Option<u64>, field: Option<String>, message: impl Into<String>) -> Self {
        ParseError { line, field, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "{field}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let line = (e.line() > 0).then_some(e.line() as u64);
        // serde_json appends " at line L column C"; keep only the message
        let text = e.to_string();
        let message = match text.rfind(" at line ") {
            Some(pos) => text[..pos].to_string(),
            None => text,
        };
        ParseError::new(line, None, message)
    }
}

impl From<csv::Error> for ParseError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map(|p| p.line());
        ParseError::new(line, None, e.to_string())
    }
}

/// Deserializes `text`, placing semantic errors at the line of the field they name.
///
/// Validation failures are reported as `path: message`, where the path uses
/// `key`, `key[i]` and `a.b` segments.
fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        let mut err = ParseError::from(e);
        if err.line.is_none() {
            if let Some((path, rest)) = err.message.split_once(": ") {
                if !path.is_empty() && !path.contains(' ') {
                    err.line = locate(text, path);
                    err.field = Some(path.to_string());
                    err.message = rest.to_string();
                }
            }
        }
        err
    })
}

enum Segment<'a> {
    Key(&'a str),
    Index(usize),
}

fn segments(path: &str) -> Option<Vec<Segment<'_>>> {
    let mut out = Vec::new();
    for part in path.split('.') {
        let (name, mut tail) = part.split_at(part.find('[').unwrap_or(part.len()));
        if !name.is_empty() {
            out.push(Segment::Key(name));
        }
        while let Some(stripped) = tail.strip_prefix('[') {
            let close = stripped.find(']')?;
            out.push(Segment::Index(stripped[..close].parse().ok()?));
            tail = &stripped[close + 1..];
        }
        if !tail.is_empty() {
            return None;
        }
    }
    Some(out)
}

/// 1-based line of the JSON value at `path`, if the text contains it.
fn locate(text: &str, path: &str) -> Option<u64> {
    let bytes = text.as_bytes();
    let mut pos = skip_ws(bytes, 0);
    for seg in segments(path)? {
        match seg {
            Segment::Key(key) => {
                if bytes.get(pos) != Some(&b'{') {
                    return None;
                }
                pos = skip_ws(bytes, pos + 1);
                loop {
                    let end = skip_string(bytes, pos)?;
                    let found = serde_json::from_str::<String>(&text[pos..end]).ok()? == key;
                    pos = skip_ws(bytes, end);
                    if bytes.get(pos) != Some(&b':') {
                        return None;
                    }
                    pos = skip_ws(bytes, pos + 1);
                    if found {
                        break;
                    }
                    pos = skip_ws(bytes, skip_value(bytes, pos)?);
                    if bytes.get(pos) != Some(&b',') {
                        return None;
                    }
                    pos = skip_ws(bytes, pos + 1);
                }
            }
            Segment::Index(index) => {
                if bytes.get(pos) != Some(&b'[') {
                    return None;
                }
                pos = skip_ws(bytes, pos + 1);
                for _ in 0..index {
                    pos = skip_ws(bytes, skip_value(bytes, pos)?);
                    if bytes.get(pos) != Some(&b',') {
                        return None;
                    }
                    pos = skip_ws(bytes, pos + 1);
                }
            }
        }
    }
    Some(bytes[..pos].iter().filter(|&&b| b == b'\n').count() as u64 + 1)
}

fn skip_ws(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

fn skip_string(bytes: &[u8], pos: usize) -> Option<usize> {
    if bytes.get(pos) != Some(&b'"') {
        return None;
    }
    let mut i = pos + 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'"' => return Some(i + 1),
            _ => i += 1,
        }
    }
    None
}

fn skip_value(bytes: &[u8], pos: usize) -> Option<usize> {
    match bytes.get(pos)? {
        b'"' => skip_string(bytes, pos),
        b'{' | b'[' => {
            let mut depth = 0usize;
            let mut i = pos;
            while i < bytes.len() {
                match bytes[i] {
                    b'"' => {
                        i = skip_string(bytes, i)?;
                        continue;
                    }
                    b'{' | b'[' => depth += 1,
                    b'}' | b']' => {
                        depth -= 1;
                        if depth == 0 {
                            return Some(i + 1);
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
            None
        }
        _ => {
            let mut i = pos;
            while i < bytes.len() && !matches!(bytes[i], b',' | b'}' | b']') && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            Some(i)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable document");
    text.push('\n');
    text
}

// ---------------------------------------------------------------- relation

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationDoc {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    pairs: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
#[serde(try_from = "RelationDoc")]
struct CheckedRelation(FiniteRelation);

impl TryFrom<RelationDoc> for CheckedRelation {
    type Error = String;

    fn try_from(doc: RelationDoc) -> Result<Self, String> {
        let universe = match doc.labels {
            Some(labels) => {
                if labels.len() != doc.size {
                    return Err(format!(
                        "labels: expected {} labels, found {}",
                        doc.size,
                        labels.len()
                    ));
                }
                Universe::with_labels(labels).map_err(|e| format!("labels: {e}"))?
            }
            None => Universe::new(doc.size),
        };
        for (i, [a, b]) in doc.pairs.iter().enumerate() {
            if *a >= doc.size || *b >= doc.size {
                return Err(format!(
                    "pairs[{i}]: pair [{a}, {b}] out of range for size {}",
                    doc.size
                ));
            }
        }
        let pairs = doc.pairs.into_iter().map(|[a, b]| (a, b));
        FiniteRelation::from_pairs(universe, pairs)
            .map(CheckedRelation)
            .map_err(|e| format!("pairs: {e}"))
    }
}

pub fn parse_relation(text: &str) -> Result<FiniteRelation, ParseError> {
    let CheckedRelation(rel) = from_json(text)?;
    Ok(rel)
}

pub fn emit_relation(rel: &FiniteRelation) -> String {
    to_json(&RelationDoc {
        size: rel.size(),
        labels: rel.universe().labels().map(|l| l.to_vec()),
        pairs: rel.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
    })
}

// ------------------------------------------------------------ order system

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderSystemDoc {
    size: usize,
    orders: Vec<KeyedOrder<Key>>,
}

#[derive(Deserialize)]
#[serde(try_from = "OrderSystemDoc")]
struct CheckedSystem(OrderSystem<Key>);

impl TryFrom<OrderSystemDoc> for CheckedSystem {
    type Error = String;

    fn try_from(doc: OrderSystemDoc) -> Result<Self, String> {
        for (i, o) in doc.orders.iter().enumerate() {
            if o.keys.len() != doc.size {
                return Err(format!(
                    "orders[{i}].keys: expected {} keys, found {}",
                    doc.size,
                    o.keys.len()
                ));
            }
        }
        OrderSystem::new(Universe::new(doc.size), doc.orders)
            .map(CheckedSystem)
            .map_err(|e| format!("orders: {e}"))
    }
}

pub fn parse_order_system(text: &str) -> Result<OrderSystem<Key>, ParseError> {
    let CheckedSystem(system) = from_json(text)?;
    Ok(system)
}

pub fn emit_order_system(system: &OrderSystem<Key>) -> String {
    to_json(&OrderSystemDoc { size: system.size(), orders: system.orders().to_vec() })
}

/// A CSV column chosen by header name or 0-based index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSpec {
    pub column: String,
    pub direction: Direction,
}

/// Order system from a CSV table with a header row.
///
/// Each spec becomes one order; `label_column` (if given) labels the rows.
pub fn parse_order_csv(
    text: &str,
    specs: &[ColumnSpec],
    label_column: Option<&str>,
) -> Result<OrderSystem<Key>, ParseError> {
    if specs.is_empty() {
        return Err(ParseError::new(None, None, "at least one gain or price column is required"));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let resolve = |name: &str| -> Result<usize, ParseError> {
        headers
            .iter()
            .position(|h| h == name)
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < headers.len()))
            .ok_or_else(|| ParseError::new(Some(1), Some(name.to_string()), "no such column"))
    };
    let columns = specs.iter().map(|s| resolve(&s.column)).collect::<Result<Vec<_>, _>>()?;
    let label_idx = label_column.map(resolve).transpose()?;

    let mut keys: Vec<Vec<Key>> = vec![Vec::new(); specs.len()];
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line());
        for (k, &c) in columns.iter().enumerate() {
            let cell = &record[c];
            let key: Key = cell.parse().map_err(|_| {
                ParseError::new(line, Some(headers[c].to_string()), format!("{cell:?} is not a number"))
            })?;
            keys[k].push(key);
        }
        if let Some(c) = label_idx {
            labels.push(record[c].to_string());
        }
    }
    let universe = match label_idx {
        Some(_) => Universe::with_labels(labels).map_err(|e| ParseError::new(None, label_column.map(String::from), e.to_string()))?,
        None => Universe::new(keys[0].len()),
    };
    let orders = keys
        .into_iter()
        .zip(specs)
        .map(|(keys, s)| KeyedOrder { keys, direction: s.direction })
        .collect();
    OrderSystem::new(universe, orders).map_err(|e| ParseError::new(None, None, e.to_string()))
}

// ------------------------------------------------------------ numeric CSV

/// Parses a numeric table with an optional header row. Every row must have
/// one of `widths` columns (all rows alike).
type NumericTable = (Vec<Vec<f64>>, Option<Vec<String>>);

fn parse_numeric_csv(text: &str, widths: &[usize]) -> Result<NumericTable, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    let mut header = None;
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map(|p| p.line());
        if !widths.contains(&record.len()) {
            return Err(ParseError::new(
                line,
                None,
                format!("expected {widths:?} columns, found {}", record.len()),
            ));
        }
        let parsed: Vec<Option<f64>> = record
            .iter()
            .map(|c| c.parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect();
        if i == 0 && parsed.iter().all(Option::is_none) {
            header = Some(record.iter().map(String::from).collect());
            continue;
        }
        let mut row = Vec::with_capacity(parsed.len());
        for (col, v) in parsed.into_iter().enumerate() {
            match v {
                Some(v) => row.push(v),
                None => {
                    let name = header
                        .as_ref()
                        .and_then(|h: &Vec<String>| h.get(col).cloned())
                        .unwrap_or_else(|| format!("column {col}"));
                    return Err(ParseError::new(
                        line,
                        Some(name),
                        format!("{:?} is not a finite number", &record[col]),
                    ));
                }
            }
        }
        if let Some(first) = rows.first().map(|r: &Vec<f64>| r.len()) {
            if first != row.len() {
                return Err(ParseError::new(line, None, format!("expected {first} columns, found {}", row.len())));
            }
        }
        rows.push(row);
    }
    Ok((rows, header))
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Raw `(x, y)` rows, before the distinctness check of [`PointSet2D`].
pub fn parse_point_rows(text: &str) -> Result<Vec<(f64, f64)>, ParseError> {
    let (rows, _) = parse_numeric_csv(text, &[2])?;
    Ok(rows.into_iter().map(|r| (r[0], r[1])).collect())
}

pub fn parse_points_csv(text: &str) -> Result<PointSet2D, ParseError> {
    PointSet2D::new(parse_point_rows(text)?).map_err(|e| ParseError::new(None, None, e.to_string()))
}

pub fn emit_points_csv(points: &PointSet2D) -> String {
    let mut out = String::from("x,y\n");
    for &(x, y) in points.points() {
        out.push_str(&format!("{},{}\n", fmt_f64(x), fmt_f64(y)));
    }
    out
}

/// Located, valued summits read from CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct SummitTable {
    /// 1 for the real line, 2 for the plane.
    pub dims: usize,
    pub points: Vec<Point>,
    pub values: Vec<f64>,
}

pub fn parse_summits_csv(text: &str) -> Result<SummitTable, ParseError> {
    let (rows, _) = parse_numeric_csv(text, &[2, 3])?;
    let dims = rows.first().map_or(2, |r| r.len() - 1);
    let (points, values) = rows
        .into_iter()
        .map(|r| match dims {
            1 => (Point::on_line(r[0]), r[1]),
            _ => (Point::new(r[0], r[1]), r[2]),
        })
        .unzip();
    Ok(SummitTable { dims, points, values })
}

pub fn emit_summits_csv(table: &SummitTable) -> String {
    let mut out = String::from(if table.dims == 1 { "x,h\n" } else { "x,y,h\n" });
    for (p, h) in table.points.iter().zip(&table.values) {
        if table.dims == 1 {
            out.push_str(&format!("{},{}\n", fmt_f64(p.x), fmt_f64(*h)));
        } else {
            out.push_str(&format!("{},{},{}\n", fmt_f64(p.x), fmt_f64(p.y), fmt_f64(*h)));
        }
    }
    out
}

// -------------------------------------------------------------- collective

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CollectiveDoc {
    elements: Vec<String>,
    h: BTreeMap<String, f64>,
    family: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(try_from = "CollectiveDoc")]
struct CheckedFamily(SubsetFamily);

impl TryFrom<CollectiveDoc> for CheckedFamily {
    type Error = String;

    fn try_from(doc: CollectiveDoc) -> Result<Self, String> {
        for name in doc.h.keys() {
            if !doc.elements.contains(name) {
                return Err(format!("h.{name}: not a listed element"));
            }
        }
        let values = doc
            .elements
            .iter()
            .map(|e| doc.h.get(e).copied().ok_or_else(|| format!("h: missing value for {e:?}")))
            .collect::<Result<Vec<f64>, String>>()?;
        let ground = ValuedGroundSet::new(doc.elements, values).map_err(|e| format!("elements: {e}"))?;
        let mut members = Vec::with_capacity(doc.family.len());
        for (i, names) in doc.family.iter().enumerate() {
            let mut m = ElementSet::new();
            for n in names {
                m.insert(ground.index_of(n).map_err(|e| format!("family[{i}]: {e}"))?);
            }
            members.push(m);
        }
        SubsetFamily::new(ground, members).map(CheckedFamily).map_err(|e| format!("family: {e}"))
    }
}

pub fn parse_collective(text: &str) -> Result<SubsetFamily, ParseError> {
    let CheckedFamily(family) = from_json(text)?;
    Ok(family)
}

pub fn emit_collective(family: &SubsetFamily) -> String {
    let ground = family.ground();
    let names = ground.elements();
    to_json(&CollectiveDoc {
        elements: names.to_vec(),
        h: names.iter().enumerate().map(|(i, n)| (n.clone(), ground.value(i))).collect(),
        family: family
            .members()
            .iter()
            .map(|m| m.iter().map(|&i| names[i].clone()).collect())
            .collect(),
    })
}
