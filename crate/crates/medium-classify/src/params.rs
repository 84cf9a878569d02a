use medium_exact::qsqrt2::ExactEntry;
use medium_exact::{rational_to_f64, QSqrt2, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Continuous parameters and discrete signs of a metaclass normal form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaclassParams {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub epsilons: Vec<i8>,
}

/// Rational parameters, used on the exact path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactParams {
    #[serde(serialize_with = "ser_rationals", deserialize_with = "de_rationals")]
    pub alphas: Vec<Rational>,
    #[serde(serialize_with = "ser_rationals", deserialize_with = "de_rationals")]
    pub betas: Vec<Rational>,
    pub epsilons: Vec<i8>,
}

impl ExactParams {
    pub fn to_f64(&self) -> MetaclassParams {
        MetaclassParams {
            alphas: self.alphas.iter().map(rational_to_f64).collect(),
            betas: self.betas.iter().map(rational_to_f64).collect(),
            epsilons: self.epsilons.clone(),
        }
    }
}

/// `{num, den}` form of a rational, when both parts fit in `i64`.
pub fn rational_entry(r: &Rational) -> Option<ExactEntry> {
    ExactEntry::from_qsqrt2(&QSqrt2::rational(r.clone()))
}

fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let entries = v
        .iter()
        .map(|r| rational_entry(r).ok_or_else(|| serde::ser::Error::custom(format!("rational {r} overflows i64"))))
        .collect::<Result<Vec<_>, _>>()?;
    entries.serialize(s)
}

fn de_rationals<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
    let entries = Vec::<ExactEntry>::deserialize(d)?;
    entries
        .iter()
        .map(|e| match e.to_qsqrt2() {
            Some(q) if q.is_rational() => Ok(q.a),
            _ => Err(serde::de::Error::custom("expected a rational {num, den} entry")),
        })
        .collect()
}

pub(crate) fn ser_rational_matrix<S: Serializer>(m: &Option<medium_exact::Mat<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    let rows = m.as_ref().map(|m| {
        (0..m.nrows())
            .map(|i| m.row(i).iter().map(rational_entry).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
    });
    match rows {
        None => s.serialize_none(),
        Some(None) => Err(serde::ser::Error::custom("rational entry overflows i64")),
        Some(Some(rows)) => rows.serialize(s),
    }
}
