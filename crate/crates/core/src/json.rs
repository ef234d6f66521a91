//! File formats: canonical series JSON, polynomial JSON and invariant reports.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::ff::{field_from_modulus, make_field, Field};
use crate::invariants::{InvariantReport, TameVerdict};
use crate::newton::MNPoly;
use crate::series::MNSeries;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalJson {
    pub num: Number,
    pub den: Number,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldJson {
    degree: usize,
    modulus: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    exp: RationalJson,
    coeff: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesJson {
    p: u64,
    field: FieldJson,
    precision: RationalJson,
    terms: Vec<TermJson>,
}

fn big_number(n: &BigInt) -> Number {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

fn number_big(n: &Number) -> Result<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| Error::Parse(format!("{n} is not an integer")))
}

pub fn rational_to_json(r: &Rational) -> RationalJson {
    RationalJson { num: big_number(r.numer()), den: big_number(r.denom()) }
}

/// Strict: the denominator must be positive and the fraction reduced.
pub fn rational_from_json(r: &RationalJson) -> Result<Rational> {
    let (num, den) = (number_big(&r.num)?, number_big(&r.den)?);
    if !den.is_positive() {
        return Err(Error::Parse(format!("denominator {den} is not positive")));
    }
    let q = Rational::new(num.clone(), den.clone());
    if *q.numer() != num {
        return Err(Error::Parse(format!("{num}/{den} is not in lowest terms")));
    }
    Ok(q)
}

fn series_to_value(a: &MNSeries) -> SeriesJson {
    let f = a.field();
    SeriesJson {
        p: a.p(),
        field: FieldJson { degree: f.degree(), modulus: f.modulus().to_vec() },
        precision: rational_to_json(a.prec()),
        terms: a
            .terms()
            .iter()
            .map(|(e, c)| TermJson { exp: rational_to_json(e), coeff: c.coords().to_vec() })
            .collect(),
    }
}

fn series_from_value(s: &SeriesJson) -> Result<MNSeries> {
    let field = field_from_modulus(s.p, s.field.degree, &s.field.modulus)?;
    let mut terms = Vec::with_capacity(s.terms.len());
    for t in &s.terms {
        let c = field.elem(&t.coeff).map_err(|e| Error::Parse(e.to_string()))?;
        if t.coeff.iter().any(|&x| x >= s.p) {
            return Err(Error::Parse(format!("coefficient {:?} not reduced mod {}", t.coeff, s.p)));
        }
        terms.push((rational_from_json(&t.exp)?, c));
    }
    let prec = rational_from_json(&s.precision)?;
    MNSeries::from_canonical(&field, terms, prec).map_err(|e| Error::Parse(e.to_string()))
}

pub fn series_to_json(a: &MNSeries) -> String {
    serde_json::to_string(&series_to_value(a)).expect("serializable")
}

pub fn series_from_json(text: &str) -> Result<MNSeries> {
    let v: SeriesJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    series_from_value(&v)
}

pub fn series_list_to_json(list: &[MNSeries]) -> String {
    let values: Vec<_> = list.iter().map(series_to_value).collect();
    serde_json::to_string(&values).expect("serializable")
}

pub fn series_list_from_json(text: &str) -> Result<Vec<MNSeries>> {
    let v: Vec<SeriesJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    v.iter().map(series_from_value).collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Int(Number),
    Text(String),
    Series(SeriesJson),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyJson {
    p: Option<u64>,
    coeffs: Vec<CoeffJson>,
    default_precision: Option<RationalJson>,
}

/// Reads a polynomial file. Rational shorthand coefficients expand at the file's
/// `default_precision`, or at `target + degree` when the file gives none.
pub fn poly_from_json(text: &str, p: Option<u64>, target: &Rational) -> Result<MNPoly> {
    let v: PolyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let p = match (v.p, p) {
        (Some(a), Some(b)) if a != b => return Err(Error::PrimeMismatch(a, b)),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Parse("no prime given in the file or on the command line".into())),
    };
    if v.coeffs.len() < 2 {
        return Err(Error::Parse("polynomial must have degree at least 1".into()));
    }
    let prec = match &v.default_precision {
        Some(r) => rational_from_json(r)?,
        None => target + Rational::from_integer(BigInt::from(v.coeffs.len() - 1)),
    };
    let fp: Field = make_field(p, 1)?;
    let mut coeffs = Vec::with_capacity(v.coeffs.len());
    for c in &v.coeffs {
        let q = match c {
            CoeffJson::Int(n) => Rational::from_integer(number_big(n)?),
            CoeffJson::Text(s) => parse_rational(s)?,
            CoeffJson::Series(s) => {
                let a = series_from_value(s)?;
                if a.p() != p {
                    return Err(Error::PrimeMismatch(a.p(), p));
                }
                coeffs.push(a);
                continue;
            }
        };
        coeffs.push(MNSeries::from_rational(q.numer(), q.denom(), &fp, prec.clone())?);
    }
    MNPoly::new(coeffs).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
struct ReportJson {
    tame_index: u64,
    inertia_index: u64,
    precision: RationalJson,
    lower_bound_only: bool,
}

#[derive(Serialize)]
struct VerdictJson {
    tame: bool,
    e: u64,
    c: Option<u64>,
    divisibility_ok: Option<bool>,
}

pub fn report_to_value(r: &InvariantReport) -> serde_json::Value {
    serde_json::to_value(ReportJson {
        tame_index: r.tame_index,
        inertia_index: r.inertia_index,
        precision: rational_to_json(&r.precision_used),
        lower_bound_only: r.lower_bound_only,
    })
    .expect("serializable")
}

pub fn verdict_to_value(v: &TameVerdict) -> serde_json::Value {
    serde_json::to_value(VerdictJson { tame: v.tame, e: v.e, c: v.c, divisibility_ok: v.divisibility_ok() })
        .expect("serializable")
}

pub fn series_to_value_json(a: &MNSeries) -> serde_json::Value {
    serde_json::to_value(series_to_value(a)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn series_round_trip() {
        let f9 = make_field(3, 2).unwrap();
        let a = MNSeries::from_canonical(
            &f9,
            vec![(rat(0, 1), f9.one()), (rat(1, 2), f9.gen()), (rat(1, 1), f9.one())],
            rat(3, 2),
        )
        .unwrap();
        let text = series_to_json(&a);
        assert_eq!(
            text,
            r#"{"p":3,"field":{"degree":2,"modulus":[1,0]},"precision":{"num":3,"den":2},"terms":[{"exp":{"num":0,"den":1},"coeff":[1,0]},{"exp":{"num":1,"den":2},"coeff":[0,1]},{"exp":{"num":1,"den":1},"coeff":[1,0]}]}"#
        );
        let b = series_from_json(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(series_to_json(&b), text);
        let huge = MNSeries::zero(&f9, Rational::new(BigInt::from(10).pow(30) + 1, BigInt::from(7).pow(40)));
        assert_eq!(series_to_json(&series_from_json(&series_to_json(&huge)).unwrap()), series_to_json(&huge));
    }

    #[test]
    fn rejects_non_canonical_series() {
        let bad = [
            r#"{"p":3,"field":{"degree":2,"modulus":[2,0]},"precision":{"num":1,"den":1},"terms":[]}"#,
            r#"{"p":3,"field":{"degree":1,"modulus":[0]},"precision":{"num":2,"den":2},"terms":[]}"#,
            r#"{"p":3,"field":{"degree":1,"modulus":[0]},"precision":{"num":2,"den":1},"terms":[{"exp":{"num":0,"den":1},"coeff":[0]}]}"#,
            r#"{"p":3,"field":{"degree":1,"modulus":[0]},"precision":{"num":2,"den":1},"terms":[{"exp":{"num":1,"den":1},"coeff":[1]},{"exp":{"num":0,"den":1},"coeff":[1]}]}"#,
            r#"{"p":3,"field":{"degree":1,"modulus":[0]},"precision":{"num":2,"den":1},"terms":[{"exp":{"num":0,"den":1},"coeff":[4]}]}"#,
            "[1,2",
        ];
        for text in bad {
            assert!(matches!(series_from_json(text), Err(Error::Parse(_))), "{text}");
        }
    }

    #[test]
    fn polynomials() {
        let poly = poly_from_json(r#"{"p":3,"coeffs":[-3,0,1]}"#, None, &rat(5, 1)).unwrap();
        assert_eq!(poly.degree(), 2);
        assert_eq!(poly.coeffs()[0].prec(), &rat(7, 1));
        let poly = poly_from_json(r#"{"coeffs":["1/4",1],"default_precision":{"num":3,"den":1}}"#, Some(3), &rat(1, 1)).unwrap();
        assert_eq!(poly.coeffs()[0].terms().len(), 3);
        assert!(matches!(poly_from_json(r#"{"p":5,"coeffs":[1,1]}"#, Some(3), &rat(1, 1)), Err(Error::PrimeMismatch(5, 3))));
        assert!(matches!(poly_from_json(r#"{"coeffs":[1,1]}"#, None, &rat(1, 1)), Err(Error::Parse(_))));
        let s = series_to_json(&MNSeries::one(&make_field(3, 1).unwrap(), rat(4, 1)));
        let text = format!(r#"{{"p":3,"coeffs":[-2,{s}]}}"#);
        assert_eq!(poly_from_json(&text, None, &rat(1, 1)).unwrap().degree(), 1);
    }
}
