//! Property tests for the algebraic backbone: group laws, metric axioms,
//! boundary squares, projector identities.

use cychom_core::bar::{antisymmetrize, antisymmetrize_chain, bar_boundary, BarSimplex};
use cychom_core::chain::Chain;
use cychom_core::cyclic::{connes, hochschild, CyclicForm, GroupRingOf, Kind};
use cychom_core::group::{Elem, GroupModel};
use cychom_core::metric::DistSum;
use cychom_core::num::qq;
use proptest::prelude::*;

fn models() -> Vec<GroupModel> {
    vec![
        GroupModel::by_name("s3").unwrap(),
        GroupModel::by_name("d4").unwrap(),
        GroupModel::lattice(2),
        GroupModel::free(2),
        GroupModel::dihedral(),
    ]
}

fn elem_of(model: &GroupModel, seed: (u8, u8)) -> Elem {
    let ball = model.ball(
        &model.identity(),
        &cychom_core::metric::Dist::from_q(cychom_core::num::qi(3)),
    );
    ball[(seed.0 as usize * 251 + seed.1 as usize) % ball.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(model_idx in 0usize..5, a in any::<(u8, u8)>(), b in any::<(u8, u8)>(), c in any::<(u8, u8)>()) {
        let model = &models()[model_idx];
        let (x, y, z) = (elem_of(model, a), elem_of(model, b), elem_of(model, c));
        prop_assert_eq!(
            model.mul(&model.mul(&x, &y), &z),
            model.mul(&x, &model.mul(&y, &z))
        );
        prop_assert_eq!(model.mul(&model.inv(&x), &x), model.identity());
        prop_assert_eq!(model.mul(&x, &model.identity()), x);
    }

    #[test]
    fn metric_axioms(model_idx in 0usize..5, a in any::<(u8, u8)>(), b in any::<(u8, u8)>(), c in any::<(u8, u8)>()) {
        let model = &models()[model_idx];
        let (x, y, z) = (elem_of(model, a), elem_of(model, b), elem_of(model, c));
        prop_assert_eq!(model.dist(&x, &y), model.dist(&y, &x));
        prop_assert!(model.dist(&x, &x).is_zero());
        // exact triangle inequality
        let rhs = DistSum::of(&[model.dist(&x, &y), model.dist(&y, &z)]);
        prop_assert!(rhs.dominates(&model.dist(&x, &z)));
    }

    #[test]
    fn bar_boundary_squares_to_zero(model_idx in 0usize..5, seeds in proptest::collection::vec(any::<(u8, u8)>(), 1..5)) {
        let model = &models()[model_idx];
        let simplex = BarSimplex(seeds.iter().map(|s| elem_of(model, *s)).collect());
        let dd = bar_boundary(&simplex).map_linear(|t| bar_boundary(t));
        prop_assert!(dd.is_zero());
        // antisymmetrizer is an idempotent chain map
        let a = antisymmetrize(&simplex);
        prop_assert_eq!(antisymmetrize_chain(&a), a.clone());
        let lhs = antisymmetrize_chain(&bar_boundary(&simplex));
        let rhs = a.map_linear(|t| bar_boundary(t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_complex_identities(model_idx in 0usize..5, lead in any::<bool>(), seeds in proptest::collection::vec(any::<(u8, u8)>(), 1..5)) {
        let model = &models()[model_idx];
        let ring = GroupRingOf { model };
        let entries: Vec<Elem> = seeds.iter().map(|s| elem_of(model, *s)).collect();
        let form = CyclicForm {
            kind: if lead { Kind::Lead } else { Kind::NoLead },
            entries,
        };
        let c = Chain::generator(form);
        let b = c.map_linear(|f| hochschild(&ring, f));
        prop_assert!(b.map_linear(|f| hochschild(&ring, f)).is_zero());
        let bb = c.map_linear(|f| connes(&ring, f));
        prop_assert!(bb.map_linear(|f| connes(&ring, f)).is_zero());
        let mut anti = bb.map_linear(|f| hochschild(&ring, f));
        anti.add(&b.map_linear(|f| connes(&ring, f)));
        prop_assert!(anti.is_zero());
    }

    #[test]
    fn chain_arithmetic(coeffs in proptest::collection::vec((any::<u8>(), -9i64..10, 1i64..7), 0..12)) {
        let mut a: Chain<u8> = Chain::zero();
        let mut b: Chain<u8> = Chain::zero();
        for (k, n, d) in &coeffs {
            a.add_term(*k, qq(*n, *d));
            b.add_term(k.wrapping_add(1), qq(*d, *n.max(&1)));
        }
        // commutativity and scaling distribute
        let ab = a.clone().plus(&b);
        let ba = b.clone().plus(&a);
        prop_assert_eq!(ab.clone(), ba);
        let s = qq(3, 2);
        let lhs = ab.scaled(&s);
        let rhs = a.scaled(&s).plus(&b.scaled(&s));
        prop_assert_eq!(lhs, rhs);
    }
}
