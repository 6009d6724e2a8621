//! Serialized shapes of every command output, with numbers written to 17
//! significant digits.

use std::fmt;
use std::io::Write;
use std::path::Path;

use ejspec_core::operator::{Mode, OperatorSpec};
use ejspec_core::pseudospectra::{FieldMeta, PseudoField};
use ejspec_core::Complex64 as C64;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{Error as _, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

/// A real written as `d.dddddddddddddddde±x`, or as the strings `"inf"`,
/// `"-inf"`, `"nan"` in JSON.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

/// 17 significant digits, or `inf`, `-inf`, `nan`.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt17(self.0)).map_err(S::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_str(&fmt17(self.0))
        }
    }
}

struct NumVisitor;

impl Visitor<'_> for NumVisitor {
    type Value = Num;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or one of \"inf\", \"-inf\", \"nan\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
        Ok(Num(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
        Ok(Num(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
        Ok(Num(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
        match v {
            "inf" => Ok(Num(f64::INFINITY)),
            "-inf" => Ok(Num(f64::NEG_INFINITY)),
            "nan" => Ok(Num(f64::NAN)),
            _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Num, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: Num,
    pub im: Num,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Self { re: Num(z.re), im: Num(z.im) }
    }
}

impl From<Complex> for C64 {
    fn from(z: Complex) -> Self {
        C64::new(z.re.0, z.im.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub mode: String,
    pub param: Complex,
}

impl From<&OperatorSpec> for SpecRecord {
    fn from(s: &OperatorSpec) -> Self {
        let mode = match s.mode {
            Mode::Standard => "standard",
            Mode::Tilde => "tilde",
        };
        Self { mode: mode.into(), param: s.param.into() }
    }
}

impl SpecRecord {
    pub fn to_spec(&self) -> Option<OperatorSpec> {
        let mode = match self.mode.as_str() {
            "standard" => Mode::Standard,
            "tilde" => Mode::Tilde,
            _ => return None,
        };
        Some(OperatorSpec { mode, param: self.param.into() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaRecord {
    pub spec: SpecRecord,
    pub dim: usize,
    pub tol: Num,
    pub seed: u64,
}

/// JSON shape of a [`PseudoField`]; `values` holds one row per imaginary-axis point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub re_axis: Vec<Num>,
    pub im_axis: Vec<Num>,
    pub values: Vec<Vec<Num>>,
    pub meta: MetaRecord,
}

impl From<&PseudoField> for FieldRecord {
    fn from(f: &PseudoField) -> Self {
        let nums = |v: &[f64]| v.iter().map(|&x| Num(x)).collect::<Vec<_>>();
        Self {
            re_axis: nums(&f.re_axis),
            im_axis: nums(&f.im_axis),
            values: f.values.chunks(f.re_axis.len()).map(nums).collect(),
            meta: MetaRecord {
                spec: (&f.meta.spec).into(),
                dim: f.meta.dim,
                tol: Num(f.meta.tol),
                seed: f.meta.seed,
            },
        }
    }
}

impl FieldRecord {
    pub fn to_field(&self) -> Option<PseudoField> {
        let reals = |v: &[Num]| v.iter().map(|x| x.0).collect::<Vec<_>>();
        Some(PseudoField {
            re_axis: reals(&self.re_axis),
            im_axis: reals(&self.im_axis),
            values: self.values.iter().flat_map(|r| reals(r)).collect(),
            meta: FieldMeta {
                spec: self.meta.spec.to_spec()?,
                dim: self.meta.dim,
                tol: self.meta.tol.0,
                seed: self.meta.seed,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// CSV with header `re,im,log10_norm`, imaginary part outer, real part inner.
pub fn field_csv<W: Write>(f: &PseudoField, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["re", "im", "log10_norm"])?;
    for (i, &y) in f.im_axis.iter().enumerate() {
        for (j, &x) in f.re_axis.iter().enumerate() {
            out.write_record([fmt17(x), fmt17(y), fmt17(f.value(i, j))])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    serde_json::to_string_pretty(value)
}

/// Writes a field to `path`, or to standard output when `path` is `None`.
pub fn emit(f: &PseudoField, format: Format, path: Option<&Path>) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => field_csv(f, &mut buf)?,
        Format::Json => {
            buf.extend_from_slice(to_json(&FieldRecord::from(f))?.as_bytes());
            buf.push(b'\n');
        }
    }
    match path {
        Some(p) => std::fs::write(p, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

/// Reads a field written by [`emit`] in JSON form.
pub fn parse_field_json(text: &str) -> anyhow::Result<PseudoField> {
    let rec: FieldRecord = serde_json::from_str(text)?;
    rec.to_field().ok_or_else(|| anyhow::anyhow!("unknown operator mode"))
}
