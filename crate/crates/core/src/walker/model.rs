use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Step, StepSet};
use crate::scalar::{format_rational, parse_rational, Scalar};

/// Step weights of one column. For a random walk these are the probabilities
/// `pi+ (right), pi- (left), omega+ (up), omega- (down)` and the optional diagonal `nu+ (ne), nu- (sw)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnWeights<T> {
    pub right: T,
    pub left: T,
    pub up: T,
    pub down: T,
    pub ne: T,
    pub sw: T,
}

impl<T: Scalar> ColumnWeights<T> {
    pub fn square(right: T, left: T, up: T, down: T) -> Self {
        Self { right, left, up, down, ne: T::zero(), sw: T::zero() }
    }

    pub fn get(&self, step: Step) -> T {
        match step {
            Step::R => self.right.clone(),
            Step::L => self.left.clone(),
            Step::U => self.up.clone(),
            Step::D => self.down.clone(),
            Step::NE => self.ne.clone(),
            Step::SW => self.sw.clone(),
            Step::SE | Step::RR => T::zero(),
        }
    }

    fn entries(&self) -> [&T; 6] {
        [&self.right, &self.left, &self.up, &self.down, &self.ne, &self.sw]
    }

    pub fn sum(&self) -> T {
        self.entries().into_iter().fold(T::zero(), |acc, x| acc + x.clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> ColumnWeights<U> {
        ColumnWeights {
            right: f(&self.right),
            left: f(&self.left),
            up: f(&self.up),
            down: f(&self.down),
            ne: f(&self.ne),
            sw: f(&self.sw),
        }
    }
}

/// Column-indexed step weights; heights never enter, so the model is y-invariant by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionModel<T> {
    columns: Vec<ColumnWeights<T>>,
}

const MOVES: [Step; 6] = [Step::R, Step::L, Step::U, Step::D, Step::NE, Step::SW];

impl<T: Scalar> TransitionModel<T> {
    /// A probability model: entries are nonnegative and every column sums to one.
    ///
    /// Exact scalars must sum to one exactly; floats within `1e-12`.
    pub fn stochastic(columns: Vec<ColumnWeights<T>>) -> Result<Self> {
        let model = Self::weights(columns)?;
        for (x, c) in model.columns.iter().enumerate() {
            let s = c.sum();
            let ok = if T::EXACT {
                s.is_one()
            } else {
                (s.to_f64_lossy() - 1.0).abs() <= 1e-12
            };
            if !ok {
                return Err(Error::InvalidModel(format!("column {x} sums to {s}, not 1")));
            }
        }
        Ok(model)
    }

    /// Nonnegative weights without the normalisation requirement (used for path counting).
    pub fn weights(columns: Vec<ColumnWeights<T>>) -> Result<Self> {
        for (x, c) in columns.iter().enumerate() {
            if c.entries().into_iter().any(|v| v.is_negative()) {
                return Err(Error::InvalidModel(format!("column {x} has a negative entry")));
            }
        }
        Ok(Self { columns })
    }

    /// Simple symmetric walk: each of the four square moves with probability 1/4.
    pub fn uniform(width: usize) -> Self {
        let q = T::from_ratio(1, 4);
        Self { columns: vec![ColumnWeights::square(q.clone(), q.clone(), q.clone(), q); width] }
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[ColumnWeights<T>] {
        &self.columns
    }

    pub fn column(&self, x: usize) -> &ColumnWeights<T> {
        &self.columns[x]
    }

    /// Moves with positive weight out of column `x`.
    pub fn moves(&self, x: usize) -> impl Iterator<Item = (Step, T)> + '_ {
        let c = &self.columns[x];
        MOVES.into_iter().map(move |s| (s, c.get(s))).filter(|(_, w)| !w.is_zero())
    }

    pub fn has_diagonal(&self) -> bool {
        self.columns.iter().any(|c| !c.ne.is_zero() || !c.sw.is_zero())
    }

    /// `pi- = omega- = 0` everywhere (and no diagonal moves).
    pub fn is_monotone(&self) -> bool {
        self.columns.iter().all(|c| c.left.is_zero() && c.down.is_zero() && c.ne.is_zero() && c.sw.is_zero())
    }

    /// Columns `from..to` as a model of their own.
    pub fn sub_columns(&self, from: usize, to: usize) -> Self {
        Self { columns: self.columns[from..to].to_vec() }
    }

    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TransitionModel<U> {
        TransitionModel { columns: self.columns.iter().map(|c| c.map(&f)).collect() }
    }

    /// Check that every move with positive weight is a step the region's step set knows about.
    pub fn check_step_set(&self, step_set: StepSet) -> Result<()> {
        for x in 0..self.width() {
            if let Some((s, _)) = self.moves(x).find(|(s, _)| !step_set.allows(*s)) {
                return Err(Error::InvalidModel(format!(
                    "column {x} moves {} which step set {} lacks",
                    s.name(),
                    step_set.name()
                )));
            }
        }
        Ok(())
    }
}

impl TransitionModel<BigRational> {
    pub fn to_f64(&self) -> TransitionModel<f64> {
        self.convert(f64::from_rational)
    }
}

/// JSON form: `{"columns": [{"right": "1/4", "left": "1/4", "up": "1/4", "down": "1/4"}, ...]}`.
/// `ne`/`sw` are optional; all entries are exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub columns: Vec<ColumnSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub right: String,
    pub left: String,
    pub up: String,
    pub down: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ne: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sw: Option<String>,
}

impl ModelSpec {
    pub fn to_model(&self) -> Result<TransitionModel<BigRational>> {
        let opt = |s: &Option<String>| s.as_deref().map(parse_rational).transpose().map(|v| v.unwrap_or_else(BigRational::zero));
        let cols = self
            .columns
            .iter()
            .map(|c| {
                Ok(ColumnWeights {
                    right: parse_rational(&c.right)?,
                    left: parse_rational(&c.left)?,
                    up: parse_rational(&c.up)?,
                    down: parse_rational(&c.down)?,
                    ne: opt(&c.ne)?,
                    sw: opt(&c.sw)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TransitionModel::stochastic(cols)
    }

    pub fn from_model(model: &TransitionModel<BigRational>) -> Self {
        let diag = model.has_diagonal();
        let columns = model
            .columns()
            .iter()
            .map(|c| ColumnSpec {
                right: format_rational(&c.right),
                left: format_rational(&c.left),
                up: format_rational(&c.up),
                down: format_rational(&c.down),
                ne: diag.then(|| format_rational(&c.ne)),
                sw: diag.then(|| format_rational(&c.sw)),
            })
            .collect();
        Self { columns }
    }
}

impl Serialize for TransitionModel<BigRational> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ModelSpec::from_model(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TransitionModel<BigRational> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        ModelSpec::deserialize(de)?.to_model().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn stochastic_checks_sums_and_signs() {
        let ok = ColumnWeights::square(q(1, 2), q(1, 6), q(1, 6), q(1, 6));
        assert!(TransitionModel::stochastic(vec![ok.clone()]).is_ok());
        let short = ColumnWeights::square(q(1, 2), q(1, 6), q(1, 6), q(1, 12));
        assert!(matches!(TransitionModel::stochastic(vec![short]), Err(Error::InvalidModel(_))));
        let neg = ColumnWeights::square(q(3, 2), q(-1, 2), q(0, 1), q(0, 1));
        assert!(matches!(TransitionModel::stochastic(vec![neg]), Err(Error::InvalidModel(_))));
        let f = ColumnWeights::square(0.5, 0.25, 0.125, 0.125);
        assert!(TransitionModel::stochastic(vec![f]).is_ok());
    }

    #[test]
    fn spec_round_trip() {
        let json = r#"{"columns":[{"right":"1/3","left":"0","up":"1/3","down":"1/3"}]}"#;
        let spec: ModelSpec = serde_json::from_str(json).unwrap();
        let model = spec.to_model().unwrap();
        assert_eq!(model.column(0).right, q(1, 3));
        assert_eq!(serde_json::to_string(&ModelSpec::from_model(&model)).unwrap(), json);
        assert_eq!(model.moves(0).count(), 3);
    }

    #[test]
    fn diagonal_moves_need_diagonal_steps() {
        let c = ColumnWeights { right: q(1, 4), left: q(1, 4), up: q(1, 8), down: q(1, 8), ne: q(1, 8), sw: q(1, 8) };
        let model = TransitionModel::stochastic(vec![c]).unwrap();
        assert!(model.check_step_set(StepSet::SquareDiag).is_ok());
        assert!(model.check_step_set(StepSet::Square).is_err());
    }
}
