//! Number formatting shared by every JSON form.
//!
//! Integral values are written without a fractional part (`1`, not `1.0`);
//! everything else uses the shortest decimal that round-trips. Non-finite
//! values become `null`.

use serde::Serializer;
use serde_json::{Number, Value};

const MAX_EXACT_INT: f64 = 9_007_199_254_740_992.0;

pub fn number(x: f64) -> Value {
    if x.is_finite() && x == x.trunc() && x.abs() < MAX_EXACT_INT {
        // -0.0 collapses to 0
        Value::Number(Number::from(x as i64))
    } else {
        Number::from_f64(x).map_or(Value::Null, Value::Number)
    }
}

pub fn serialize_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&number(*x), s)
}

pub fn serialize_f64_seq<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Value> = xs.iter().map(|&x| number(x)).collect();
    serde::Serialize::serialize(&v, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_values_drop_the_fraction() {
        assert_eq!(number(0.0).to_string(), "0");
        assert_eq!(number(-0.0).to_string(), "0");
        assert_eq!(number(-12.0).to_string(), "-12");
        assert_eq!(number(0.1).to_string(), "0.1");
        assert_eq!(number(f64::INFINITY), Value::Null);
    }

    #[test]
    fn shortest_form_round_trips() {
        for x in [1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 6.02e23, -7.5e-9] {
            let s = number(x).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
