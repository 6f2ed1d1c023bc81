//! Text and JSON renderings. Text output parses back to the same value.

use serde_json::{json, Value};

use crate::rat::Rat;
use crate::segments::{Multisegment, Point, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn segment_text(s: &Segment) -> String {
    format!("{s:?}")
}

pub fn multisegment_text(m: &Multisegment) -> String {
    format!("{m:?}")
}

pub fn point_text(p: &Point) -> String {
    if p.cusp.is_unr() {
        p.at.to_string()
    } else {
        format!("{}@{}", p.at, p.cusp.name())
    }
}

pub fn rat_json(r: Rat) -> Value {
    Value::String(r.to_string())
}

pub fn segment_json(s: &Segment) -> Value {
    json!({
        "label": s.cusp().name(),
        "deg": s.cusp().deg(),
        "begin": rat_json(s.begin()),
        "end": rat_json(s.end()),
    })
}

pub fn point_json(p: &Point) -> Value {
    json!({ "label": p.cusp.name(), "deg": p.cusp.deg(), "at": rat_json(p.at) })
}

pub fn multisegment_json(m: &Multisegment, meta: Value) -> Value {
    json!({
        "entries": m.iter().map(segment_json).collect::<Vec<_>>(),
        "group_size": m.group_size(),
        "meta": meta,
    })
}

pub fn render(m: &Multisegment, format: Format) -> String {
    match format {
        Format::Text => multisegment_text(m),
        Format::Json => multisegment_json(m, json!({})).to_string(),
    }
}
