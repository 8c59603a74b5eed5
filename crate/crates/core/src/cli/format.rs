use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::value::RawValue;

/// Scientific notation with 17 significant digits, enough to round-trip
/// any `f64`. Negative zero prints as zero.
pub fn sig17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// An `f64` that serializes to JSON in [`sig17`] form.
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(sig17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// One column value of a flat record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Field {
    Int(u8),
    Real(f64),
}

impl Field {
    pub fn render(&self) -> String {
        match self {
            Field::Int(i) => i.to_string(),
            Field::Real(x) => sig17(*x),
        }
    }
}

/// Flat records with a fixed column set.
pub trait Record {
    const COLUMNS: &'static [&'static str];
    fn fields(&self) -> Vec<Field>;
}

pub(crate) struct AsJson<'a, R>(pub &'a R);

impl<R: Record> Serialize for AsJson<'_, R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fields = self.0.fields();
        let mut map = serializer.serialize_map(Some(fields.len()))?;
        for (name, field) in R::COLUMNS.iter().zip(fields) {
            match field {
                Field::Int(i) => map.serialize_entry(name, &i)?,
                Field::Real(x) => map.serialize_entry(name, &Sig17(x))?,
            }
        }
        map.end()
    }
}

/// Header plus one comma-separated line per record, LF endings.
pub fn to_csv<R: Record>(records: &[R]) -> String {
    let mut out = R::COLUMNS.join(",");
    out.push('\n');
    for r in records {
        let line: Vec<String> = r.fields().iter().map(Field::render).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// JSON array of flat objects, keys in column order.
pub fn to_json_array<R: Record>(records: &[R]) -> String {
    let wrapped: Vec<AsJson<'_, R>> = records.iter().map(AsJson).collect();
    let mut s = serde_json::to_string_pretty(&wrapped).expect("records serialize");
    s.push('\n');
    s
}

/// A single JSON object.
pub fn to_json_object<R: Record>(record: &R) -> String {
    let mut s = serde_json::to_string_pretty(&AsJson(record)).expect("record serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for x in [0.0, -0.0, 1.0, std::f64::consts::LN_2, 1e-300, 0.1875, 0.1 + 0.2] {
            let s = sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let digits = s.split('e').next().unwrap().replace(['.', '-'], "");
            assert_eq!(digits.len(), 17);
        }
        assert_eq!(sig17(-0.0), sig17(0.0));
    }

    #[test]
    fn json_numbers_are_valid() {
        let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&Sig17(0.5)).unwrap()).unwrap();
        assert_eq!(v.as_f64(), Some(0.5));
    }
}
