//! Polynomial vector fields, gray-boxing of open Petri nets with rates into
//! open dynamical systems, the open rate equation and its integration.
//!
//! An open dynamical system is a cospan of finite sets whose apex carries an
//! algebraic vector field, so [`OpenDynam`] is a decorated cospan for the
//! decoration theory of [`PolyVectorField`]. Gray-boxing keeps the legs and
//! replaces the net by its mass-action field.

mod field;
mod flow;
mod poly;
mod simulate;

pub use field::{check_no_left_adjoint_witness, mass_action, pushforward_field, PolyVectorField};
pub use flow::{FlowSchedule, Flows, PiecewiseConstant};
pub use poly::{Polynomial, COEFF_TOLERANCE};
pub use simulate::{open_rate_rhs, simulate, Trajectory};

use crate::cospan::{Cospan, DecoratedCospan};
use crate::error::{Error, Result};
use crate::finset;
use crate::scalar::Scalar;
use crate::system::RatedPetriNet;

/// `X -i-> S <-o- Y` with a field on `S`.
pub type OpenDynam<T = f64> = DecoratedCospan<PolyVectorField<T>>;

/// An open Petri net with rates, as a decorated cospan over its places.
pub type OpenRatedNet<T = f64> = DecoratedCospan<RatedPetriNet<T>>;

/// Same feet and legs, with the mass-action field of the apex net.
pub fn graybox<T: Scalar>(m: &OpenRatedNet<T>) -> OpenDynam<T> {
    m.map_decoration(mass_action).expect("mass action keeps the place set")
}

/// Glues place sets by pushout and adds the fields pushed along the two
/// injections. Agrees with [`Cospan::compose`] on [`OpenDynam`].
pub fn compose_open_dynam<T: Scalar>(m: &OpenDynam<T>, n: &OpenDynam<T>) -> Result<OpenDynam<T>> {
    if m.right_foot() != n.left_foot() {
        return Err(Error::Composability { right: m.right_foot().size, left: n.left_foot().size });
    }
    let p = finset::pushout(m.right_leg(), n.left_leg())?;
    let field = m.decoration().pushforward(&p.left)?.add(&n.decoration().pushforward(&p.right)?)?;
    DecoratedCospan::new(p.left.after(m.left_leg())?, p.right.after(n.right_leg())?, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinFunction, FinSetOb};
    use crate::models;

    fn one_place(v: Polynomial<f64>) -> OpenDynam {
        let id = FinFunction::identity(1);
        DecoratedCospan::new(id.clone(), id, PolyVectorField::new(vec![v]).unwrap()).unwrap()
    }

    #[test]
    fn gluing_two_one_place_systems_adds_fields() {
        let sq = Polynomial::monomial(1, vec![2], 1.0).unwrap();
        let neg = Polynomial::monomial(1, vec![1], -1.0).unwrap();
        let glued = compose_open_dynam(&one_place(sq.clone()), &one_place(neg.clone())).unwrap();
        assert_eq!(glued.decoration().components(), &[sq.add(&neg).unwrap()]);
        assert_eq!(glued, one_place(sq).compose(&one_place(neg)).unwrap());
    }

    #[test]
    fn composing_with_identity_keeps_the_field() {
        let m = graybox(&models::sir::<f64>(0.3, 0.1));
        let id = OpenDynam::identity(m.right_foot());
        assert_eq!(compose_open_dynam(&m, &id).unwrap(), m);
        assert!(matches!(compose_open_dynam(&id, &m), Err(Error::Composability { .. })));
    }

    #[test]
    fn sir_rate_equation() {
        let (r1, r2) = (0.3, 0.1);
        let sys = graybox(&models::sir::<f64>(r1, r2));
        let si = Polynomial::monomial(3, vec![1, 1, 0], 1.0).unwrap();
        let i = Polynomial::variable(3, 1).unwrap();
        assert_eq!(sys.decoration().component(0), &si.scale(-r1));
        assert_eq!(sys.decoration().component(1), &si.scale(r1).add(&i.scale(-r2)).unwrap());
        assert_eq!(sys.decoration().component(2), &i.scale(r2));

        // a constant inflow at i3, which lands on I
        let mut sched = FlowSchedule::zero(3, 1);
        sched.inflows[2] = PiecewiseConstant::constant(0.1);
        let c = [0.9, 0.1, 0.0];
        let plain = open_rate_rhs(&sys, &FlowSchedule::zero(3, 1), 0.0, &c).unwrap();
        let fed = open_rate_rhs(&sys, &sched, 0.0, &c).unwrap();
        assert!((fed[1] - plain[1] - 0.1).abs() < 1e-15);
        assert_eq!((fed[0], fed[2]), (plain[0], plain[2]));
    }

    #[test]
    fn inflows_at_merged_feet_add_up() {
        let sys = graybox(&models::sir::<f64>(0.0, 0.0));
        let mut sched = FlowSchedule::zero(3, 1);
        sched.inflows[0] = PiecewiseConstant::constant(1.0);
        sched.inflows[1] = PiecewiseConstant::constant(2.0);
        sched.outflows[0] = PiecewiseConstant::constant(0.5);
        assert_eq!(open_rate_rhs(&sys, &sched, 0.0, &[1.0, 1.0, 1.0]).unwrap(), vec![3.0, 0.0, -0.5]);
        assert!(matches!(open_rate_rhs(&sys, &sched, 0.0, &[1.0]), Err(Error::Dimension { expected: 3, found: 1 })));
    }

    #[test]
    fn zero_field_stays_put() {
        let sys = OpenDynam::<f64>::identity(FinSetOb::new(2));
        let traj = simulate(&sys, &FlowSchedule::zero(2, 2), &[1.0, 2.0], 0.0, 1.0, 0.25).unwrap();
        assert_eq!(traj.times, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(traj.states.iter().all(|s| s == &[1.0, 2.0]));
    }

    #[test]
    fn last_step_is_shortened() {
        let sys = OpenDynam::<f64>::identity(FinSetOb::new(1));
        let traj = simulate(&sys, &FlowSchedule::zero(1, 1), &[0.0], 0.0, 1.0, 0.3).unwrap();
        assert_eq!(traj.len(), 5);
        assert_eq!(*traj.times.last().unwrap(), 1.0);
    }

    #[test]
    fn decay_matches_the_exponential() {
        let sys = graybox(&models::decay::<f64>(0.5));
        let traj = simulate(&sys, &FlowSchedule::zero(1, 1), &[1.0], 0.0, 10.0, 1e-3).unwrap();
        for (t, c) in traj.rows() {
            assert!((c[0] - (-0.5 * t).exp()).abs() < 1e-6, "at {t}");
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let sys = OpenDynam::<f64>::identity(FinSetOb::new(1));
        let z = FlowSchedule::zero(1, 1);
        assert!(matches!(simulate(&sys, &z, &[0.0], 0.0, 1.0, 0.0), Err(Error::InvalidSimulation(_))));
        assert!(matches!(simulate(&sys, &z, &[0.0], 1.0, 0.0, 0.1), Err(Error::InvalidSimulation(_))));
        assert!(matches!(simulate(&sys, &z, &[0.0, 1.0], 0.0, 1.0, 0.1), Err(Error::Dimension { .. })));
    }

    #[test]
    fn blow_up_is_reported_with_the_last_good_time() {
        let cube = Polynomial::monomial(1, vec![3], 1.0).unwrap();
        let sys = one_place(cube);
        let r = simulate(&sys, &FlowSchedule::zero(1, 1), &[10.0], 0.0, 100.0, 0.1);
        assert!(matches!(r, Err(Error::Divergence { .. })), "{r:?}");
    }
}
