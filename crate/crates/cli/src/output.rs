//! JSON encodings: rationals as `"p/q"` strings, quadratic irrationals as
//! `{"a", "b", "m"}`, supports as sorted label arrays.

use serde_json::{json, Value};
use zlab_core::lattice::DivisorClass;
use zlab_core::scalar::format_rational;
use zlab_core::{QuadraticIrrational, Rational, Support, SurfaceModel};

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn class(d: &DivisorClass) -> Value {
    Value::Array(d.coords().iter().map(rational).collect())
}

pub fn quadratic(q: &QuadraticIrrational) -> Value {
    let m: Value = q.m().to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::String(q.m().to_string()));
    json!({ "a": rational(q.a()), "b": rational(q.b()), "m": m })
}

pub fn support(model: &SurfaceModel, s: &Support) -> Value {
    Value::Array(s.labels(model).into_iter().map(Value::String).collect())
}

pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
