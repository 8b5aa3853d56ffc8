//! CSV and JSON encodings of a polyline.
//!
//! CSV: header `x,y`, one vertex per row. JSON:
//! `{"a":…,"h":…,"L":…,"vertices":[[x,y],…]}`. Numbers are written with 17
//! significant digits so files round-trip exactly.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Params, Point, Polyline};
use crate::error::Result;
use crate::fmt::{g17, serialize_g17, serialize_g17_pairs};

pub fn write_csv<W: Write>(p: &Polyline, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y"])?;
    for v in p.vertices() {
        w.write_record([g17(v.x), g17(v.y)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Polyline> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut v = Vec::new();
    for row in r.deserialize() {
        let (x, y): (f64, f64) = row?;
        v.push(Point::new(x, y));
    }
    Polyline::new(v)
}

#[derive(Serialize)]
struct CurveOut<'a> {
    #[serde(serialize_with = "serialize_g17")]
    a: f64,
    #[serde(serialize_with = "serialize_g17")]
    h: f64,
    #[serde(rename = "L", serialize_with = "serialize_g17")]
    l: f64,
    #[serde(serialize_with = "serialize_g17_pairs")]
    vertices: &'a [[f64; 2]],
}

/// A curve read from JSON together with the parameters stored alongside it.
#[derive(Debug, Clone, Deserialize)]
pub struct CurveFile {
    pub a: f64,
    pub h: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub vertices: Vec<[f64; 2]>,
}

impl CurveFile {
    pub fn params(&self) -> Result<Params> {
        Params::new(self.a, self.h, self.l)
    }

    pub fn polyline(&self) -> Result<Polyline> {
        Polyline::new(self.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect())
    }
}

pub fn to_json(p: &Polyline, params: &Params) -> Result<String> {
    let pairs: Vec<[f64; 2]> = p.vertices().iter().map(|v| [v.x, v.y]).collect();
    let doc = CurveOut { a: params.a, h: params.h, l: params.l, vertices: &pairs };
    Ok(serde_json::to_string(&doc)?)
}

pub fn write_json<W: Write>(p: &Polyline, params: &Params, mut out: W) -> Result<()> {
    out.write_all(to_json(p, params)?.as_bytes())?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> Result<CurveFile> {
    Ok(serde_json::from_reader(input)?)
}
