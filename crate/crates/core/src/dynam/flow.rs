use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A step function of time given by `(breakpoint, value)` pairs. Each value
/// holds from its breakpoint until the next one; before the first breakpoint
/// the function is zero.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiecewiseConstant<T = f64> {
    steps: Vec<(T, T)>,
}

impl<T: Scalar> PiecewiseConstant<T> {
    pub fn new(steps: Vec<(T, T)>) -> Result<Self> {
        for (i, &(t, v)) in steps.iter().enumerate() {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidSimulation(format!("breakpoint {i} is not finite")));
            }
            if i > 0 && steps[i - 1].0 >= t {
                return Err(Error::InvalidSimulation(format!(
                    "breakpoints must be strictly increasing, {} then {t}",
                    steps[i - 1].0
                )));
            }
        }
        Ok(PiecewiseConstant { steps })
    }

    pub fn zero() -> Self {
        PiecewiseConstant { steps: Vec::new() }
    }

    pub fn constant(v: T) -> Self {
        PiecewiseConstant { steps: vec![(T::neg_infinity(), v)] }
    }

    pub fn steps(&self) -> &[(T, T)] {
        &self.steps
    }

    pub fn at(&self, t: T) -> T {
        match self.steps.partition_point(|&(b, _)| b <= t) {
            0 => T::zero(),
            i => self.steps[i - 1].1,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        PiecewiseConstant::new(self.steps.clone()).map(|_| ())
    }
}

/// Time-indexed inflows at the left foot and outflows at the right foot.
pub trait Flows<T> {
    /// Writes `I(t)`, one entry per left foot element.
    fn inflows(&self, t: T, out: &mut [T]);
    /// Writes `O(t)`, one entry per right foot element.
    fn outflows(&self, t: T, out: &mut [T]);
}

/// Piecewise-constant inflows and outflows.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FlowSchedule<T = f64> {
    pub inflows: Vec<PiecewiseConstant<T>>,
    pub outflows: Vec<PiecewiseConstant<T>>,
}

impl<T: Scalar> FlowSchedule<T> {
    pub fn zero(inputs: usize, outputs: usize) -> Self {
        FlowSchedule {
            inflows: vec![PiecewiseConstant::zero(); inputs],
            outflows: vec![PiecewiseConstant::zero(); outputs],
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.inflows.iter().chain(&self.outflows).try_for_each(PiecewiseConstant::validate)
    }
}

impl<T: Scalar> Flows<T> for FlowSchedule<T> {
    fn inflows(&self, t: T, out: &mut [T]) {
        for (o, f) in out.iter_mut().zip(&self.inflows) {
            *o = f.at(t);
        }
    }

    fn outflows(&self, t: T, out: &mut [T]) {
        for (o, f) in out.iter_mut().zip(&self.outflows) {
            *o = f.at(t);
        }
    }
}
