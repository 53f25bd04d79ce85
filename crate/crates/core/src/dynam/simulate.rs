use crate::cospan::Cospan;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::flow::Flows;
use super::OpenDynam;

/// The open rate equation `dc/dt = v(c) + i_*(I(t)) - o_*(O(t))`.
pub fn open_rate_rhs<T: Scalar, F: Flows<T>>(sys: &OpenDynam<T>, flows: &F, t: T, c: &[T]) -> Result<Vec<T>> {
    let mut scratch = Scratch::new(sys);
    let mut out = vec![T::zero(); c.len()];
    rhs_into(sys, flows, t, c, &mut scratch, &mut out)?;
    Ok(out)
}

struct Scratch<T> {
    inflow: Vec<T>,
    outflow: Vec<T>,
}

impl<T: Scalar> Scratch<T> {
    fn new(sys: &OpenDynam<T>) -> Self {
        Scratch { inflow: vec![T::zero(); sys.left_foot().size], outflow: vec![T::zero(); sys.right_foot().size] }
    }
}

fn rhs_into<T: Scalar, F: Flows<T>>(
    sys: &OpenDynam<T>,
    flows: &F,
    t: T,
    c: &[T],
    scratch: &mut Scratch<T>,
    out: &mut [T],
) -> Result<()> {
    let field = sys.decoration();
    let n = field.over().size;
    if c.len() != n {
        return Err(Error::Dimension { expected: n, found: c.len() });
    }
    for (o, p) in out.iter_mut().zip(field.components()) {
        *o = p.eval_unchecked(c);
    }
    flows.inflows(t, &mut scratch.inflow);
    flows.outflows(t, &mut scratch.outflow);
    for (x, &flow) in scratch.inflow.iter().enumerate() {
        out[sys.left_leg().apply(x)] += flow;
    }
    for (y, &flow) in scratch.outflow.iter().enumerate() {
        out[sys.right_leg().apply(y)] -= flow;
    }
    Ok(())
}

/// Sampled states, one row per step including both endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T = f64> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (T, &[T])> {
        self.times.iter().copied().zip(self.states.iter().map(Vec::as_slice))
    }
}

/// Integrates the open rate equation with classical fourth-order Runge-Kutta
/// at a fixed step `dt`, shortening the last step to land on `t1`.
///
/// Sample times are `t0 + k dt`, computed afresh at every step so that
/// rounding does not accumulate.
pub fn simulate<T: Scalar, F: Flows<T>>(
    sys: &OpenDynam<T>,
    flows: &F,
    c0: &[T],
    t0: T,
    t1: T,
    dt: T,
) -> Result<Trajectory<T>> {
    let n = sys.apex().size;
    if c0.len() != n {
        return Err(Error::Dimension { expected: n, found: c0.len() });
    }
    if !(dt > T::zero() && dt.is_finite()) {
        return Err(Error::InvalidSimulation(format!("step must be positive, got {dt}")));
    }
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(Error::InvalidSimulation(format!("need t0 < t1, got [{t0}, {t1}]")));
    }
    if c0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidSimulation("initial state is not finite".into()));
    }

    // a step within a relative hair of t1 is the final step
    let span = (t1 - t0) / dt;
    let slack = T::from_f64_lossy(1e-9);
    let steps = (span - slack).ceil().max(T::one()).to_usize().ok_or_else(|| {
        Error::InvalidSimulation(format!("{span} steps is too many"))
    })?;

    let mut scratch = Scratch::new(sys);
    let mut k = [vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n]];
    let mut tmp = vec![T::zero(); n];
    let mut c = c0.to_vec();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(c.clone());

    let two = T::one() + T::one();
    let six = two * (two + T::one());
    for step in 0..steps {
        let t = t0 + T::from_usize(step).expect("step index fits") * dt;
        let next = if step + 1 == steps { t1 } else { t0 + T::from_usize(step + 1).expect("step index fits") * dt };
        let h = next - t;
        let half = h / two;

        rhs_into(sys, flows, t, &c, &mut scratch, &mut k[0])?;
        for i in 0..n {
            tmp[i] = c[i] + half * k[0][i];
        }
        rhs_into(sys, flows, t + half, &tmp, &mut scratch, &mut k[1])?;
        for i in 0..n {
            tmp[i] = c[i] + half * k[1][i];
        }
        rhs_into(sys, flows, t + half, &tmp, &mut scratch, &mut k[2])?;
        for i in 0..n {
            tmp[i] = c[i] + h * k[2][i];
        }
        rhs_into(sys, flows, next, &tmp, &mut scratch, &mut k[3])?;
        for i in 0..n {
            c[i] += h / six * (k[0][i] + two * (k[1][i] + k[2][i]) + k[3][i]);
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::Divergence { last_good_time: t.to_f64_lossy() });
        }
        times.push(next);
        states.push(c.clone());
    }
    Ok(Trajectory { times, states })
}
