//! Acceptance gate: one test per criterion, each printing a pass/fail line
//! with its timing. Counts, tolerances (all exact — zero tolerance), and
//! wall-clock budgets are pinned here. Run with
//! `cargo test --release --test acceptance -- --test-threads=1 --nocapture`.

use std::time::{Duration, Instant};

use num_traits::Zero;

use cychom_core::chain::Chain;
use cychom_core::cyclic::{
    class_of_form, connes, decompose_by_class, hochschild, total_diff, CyclicForm, GroupRingOf,
    LineAlgebra,
};
use cychom_core::group::{Elem, GroupModel};
use cychom_core::num::{qi, qq, Q};
use cychom_core::pipeline::{group_homology, hp_finite};
use cychom_core::sample::Sampler;
use cychom_core::suites;
use cychom_core::trace::{winding_chain, ClassCochain};

fn criterion(number: u32, label: &str, budget: Duration, run: impl FnOnce() -> Result<(), String>) {
    let t0 = Instant::now();
    let outcome = run();
    let dt = t0.elapsed();
    match outcome {
        Ok(()) => {
            println!("criterion {number:02} {label}: PASS ({dt:.2?})");
            assert!(
                dt <= budget,
                "criterion {number} exceeded its budget: {dt:?} > {budget:?}"
            );
        }
        Err(w) => {
            println!("criterion {number:02} {label}: FAIL ({dt:.2?}) -- {w}");
            panic!("criterion {number} failed: {w}");
        }
    }
}

fn need(e: cychom_core::report::SuiteEntry) -> Result<(), String> {
    if e.passed {
        Ok(())
    } else {
        Err(format!("{}: {:?}", e.name, e.witness))
    }
}

#[test]
fn criterion_01_mixed_identities() {
    criterion(1, "mixed-complex identities on 500 forms per algebra", Duration::from_secs(10), || {
        need(suites::check_mixed_identities(101, 500))
    });
}

#[test]
fn criterion_02_bar_homotopies() {
    criterion(2, "prism and radial homotopy identities, 200 samples per backend", Duration::from_secs(30), || {
        need(suites::check_prism_homotopy(102, 200))?;
        need(suites::check_radial_contraction(103, 200))
    });
}

#[test]
fn criterion_03_cartan_and_integrated() {
    criterion(3, "Cartan formula at 5 rational times and integrated homotopy, 100 samples", Duration::from_secs(60), || {
        need(suites::check_cartan_formula(104, 100))?;
        need(suites::check_integrated_homotopy(105, 100))
    });
}

#[test]
fn criterion_04_cone_contraction() {
    criterion(4, "cone contraction d h + h d = id on 100 elements per backend", Duration::from_secs(120), || {
        need(suites::check_cone_contraction(106, 100))
    });
}

#[test]
fn criterion_05_line_cochain() {
    criterion(5, "line cochain identities on the half-integer grid in [-10,10]", Duration::from_secs(10), || {
        // exhaustive half-integer grid, degrees <= 2
        let alg = LineAlgebra;
        let grid: Vec<Q> = (-20..=20).map(|n| qq(n, 2)).collect();
        for t0 in &grid {
            let f = CyclicForm::lead(vec![t0.clone()]);
            if winding_chain(&connes(&alg, &f)) != qi(1) {
                return Err(format!("coboundary at {t0}"));
            }
        }
        for t0 in &grid {
            for t1 in &grid {
                let g = CyclicForm::nolead(vec![t0.clone(), t1.clone()]);
                if !winding_chain(&hochschild(&alg, &g)).is_zero() {
                    return Err(format!("unled b-value at ({t0},{t1})"));
                }
                for t2 in grid.iter().step_by(4) {
                    let f = CyclicForm::lead(vec![t0.clone(), t1.clone(), t2.clone()]);
                    if !winding_chain(&hochschild(&alg, &f)).is_zero() {
                        return Err(format!("led b-value at ({t0},{t1},{t2})"));
                    }
                }
            }
        }
        // degree-3 rational samples in [-10,10]
        let mut s = Sampler::new(107);
        for _ in 0..1000 {
            let f = CyclicForm::lead(vec![
                s.rational(10, 8),
                s.rational(10, 8),
                s.rational(10, 8),
                s.rational(10, 8),
            ]);
            if !winding_chain(&hochschild(&alg, &f)).is_zero() {
                return Err(format!("degree-3 b-value on {f:?}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_class_cochain_coboundary() {
    criterion(6, "class cochain coboundary equals the class trace, 5 classes per backend", Duration::from_secs(60), || {
        for (model, radius) in [
            (GroupModel::lattice(1), 4i64),
            (GroupModel::lattice(2), 4),
            (GroupModel::free(2), 4),
            (GroupModel::dihedral(), 4),
        ] {
            let ring = GroupRingOf { model: &model };
            let classes: Vec<Elem> = match &model {
                GroupModel::Lattice(g) if g.dim == 1 => {
                    (1..=5).map(|n| Elem::Lattice(vec![n])).collect()
                }
                GroupModel::Lattice(_) => vec![
                    Elem::Lattice(vec![1, 0]),
                    Elem::Lattice(vec![0, 1]),
                    Elem::Lattice(vec![1, 1]),
                    Elem::Lattice(vec![2, 1]),
                    Elem::Lattice(vec![3, 4]),
                ],
                GroupModel::Free(_) => ["a", "b", "ab", "aB", "aab"]
                    .iter()
                    .map(|w| model.parse_elem(w).unwrap())
                    .collect(),
                GroupModel::Dihedral(_) => (1..=5)
                    .map(|n| Elem::Dihedral { t: n, flip: false })
                    .collect(),
                GroupModel::Finite(_) => unreachable!(),
            };
            let ball = model.ball(
                &model.identity(),
                &cychom_core::metric::Dist::from_q(qi(radius)),
            );
            for v in classes {
                let chic = ClassCochain::new(&model, &v).map_err(|e| e.to_string())?;
                let rep = model.class_rep(&v);
                // all degree-0 generators within the radius
                for g in &ball {
                    let f = CyclicForm::lead(vec![g.clone()]);
                    let val = chic.eval_chain(&connes(&ring, &f));
                    let expected = if model.class_rep(g) == rep { qi(1) } else { qi(0) };
                    if val != expected {
                        return Err(format!(
                            "{} v={}: degree-0 at {}",
                            model.name(),
                            model.display_elem(&v),
                            model.display_elem(g)
                        ));
                    }
                }
                // all degree-2 class generators with differential entries in
                // the ball (the lead completes the product into the class)
                for h1 in &ball {
                    for h2 in &ball {
                        let t = model.mul(h1, h2);
                        let h0 = model.mul(&rep, &model.inv(&t));
                        let f = CyclicForm::lead(vec![h0, h1.clone(), h2.clone()]);
                        if chic.coboundary(&f) != qi(0) {
                            return Err(format!(
                                "{} v={}: degree-2 closedness on {f:?}",
                                model.name(),
                                model.display_elem(&v)
                            ));
                        }
                    }
                }
                // degree-1: the cochain is defined on every class generator,
                // independently of the descent preimage
                for h1 in &ball {
                    let h0 = model.mul(&rep, &model.inv(h1));
                    let f = CyclicForm::lead(vec![h0, h1.clone()]);
                    let a = chic.eval(&f);
                    let p1 = chic.preimage(&f).ok_or("missing preimage")?;
                    for zc in model.centralizer_sample(&v, 2).into_iter().take(3) {
                        let p2 = cychom_core::cyclic::translate_form(&model, &zc, &p1);
                        if chic.axis.eval(&p2) != a {
                            return Err(format!(
                                "{} v={}: preimage dependence on {f:?}",
                                model.name(),
                                model.display_elem(&v)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_axis_bound() {
    criterion(7, "sharp axis-cochain bound on 1000 one-forms per backend", Duration::from_secs(30), || {
        need(suites::check_axis_bound(108, 1000))
    });
}

#[test]
fn criterion_08_finite_groups_both_sides() {
    criterion(8, "finite groups: cyclic side equals the Bar side per class", Duration::from_secs(1200), || {
        for (name, expected) in [
            ("z2", (2usize, 0usize)),
            ("z2xz2", (4, 0)),
            ("s3", (3, 0)),
            ("d4", (5, 0)),
        ] {
            let t0 = Instant::now();
            let model = GroupModel::by_name(name).unwrap();
            let hp = hp_finite(&model, 6, 3000, 207).map_err(|e| format!("{name}: {e}"))?;
            let even: usize = hp.iter().map(|r| r.even).sum();
            let odd: usize = hp.iter().map(|r| r.odd).sum();
            if (even, odd) != expected {
                return Err(format!("{name}: cyclic side ({even},{odd}) != {expected:?}"));
            }
            // the Bar side, class by class
            let gh = group_homology(&model, 2, 8).map_err(|e| format!("{name}: {e}"))?;
            for (h, g) in hp.iter().zip(&gh) {
                if (h.even, h.odd) != (g.even, g.odd) {
                    return Err(format!(
                        "{name} class {}: cyclic ({},{}) != bar ({},{})",
                        h.representative, h.even, h.odd, g.even, g.odd
                    ));
                }
            }
            let dt = t0.elapsed();
            println!("  {name}: ({even},{odd}) in {dt:.2?}");
            if dt > Duration::from_secs(300) {
                return Err(format!("{name} exceeded its 5-minute budget: {dt:?}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_infinite_groups_bar_side() {
    criterion(9, "infinite groups: stabilized Rips coinvariant homology", Duration::from_secs(900), || {
        for (name, expected) in [("Zn:2", (2usize, 2usize)), ("free:2", (1, 2)), ("dinf", (3, 0))] {
            let t0 = Instant::now();
            let model = GroupModel::by_name(name).unwrap();
            let reports = group_homology(&model, 1, 6).map_err(|e| format!("{name}: {e}"))?;
            let even: usize = reports.iter().map(|r| r.even).sum();
            let odd: usize = reports.iter().map(|r| r.odd).sum();
            if (even, odd) != expected {
                return Err(format!("{name}: ({even},{odd}) != {expected:?}"));
            }
            let dt = t0.elapsed();
            println!("  {name}: ({even},{odd}) stabilized in {dt:.2?}");
            if dt > Duration::from_secs(300) {
                return Err(format!("{name} exceeded its 5-minute budget: {dt:?}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_class_decomposition() {
    criterion(10, "class decomposition: differential-stable, reconstructs, 500 samples", Duration::from_secs(10), || {
        let mut s = Sampler::new(110);
        let models = [
            GroupModel::by_name("s3").unwrap(),
            GroupModel::dihedral(),
            GroupModel::lattice(1),
            GroupModel::free(2),
        ];
        for i in 0..500 {
            let model = &models[i % models.len()];
            let ring = GroupRingOf { model };
            let f = s.form(model, 2, 3, true);
            let mut c = Chain::generator(f.clone());
            c.add_term(s.form(model, 2, 3, true), qq(3, 2));
            let parts = decompose_by_class(model, &c);
            let mut sum = Chain::zero();
            for p in parts.values() {
                sum.add(p);
            }
            if sum != c {
                return Err(format!("reconstruction on {f:?}"));
            }
            for (cls, part) in &parts {
                for (g, _) in total_diff(&ring, part).iter() {
                    if class_of_form(model, g) != *cls {
                        return Err(format!("component leak from {cls:?} via {g:?}"));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_11_equivariance() {
    criterion(11, "conjugation and centralizer equivariance of all operators", Duration::from_secs(600), || {
        need(suites::check_projection_covariance(111, 100))?;
        need(suites::check_cyclic_contraction(112, 100))?;
        need(suites::check_class_descent(113, 100))?;
        need(suites::check_axis_invariance(114, 100))?;
        need(suites::check_tilt_equivariance(115, 25))
    });
}

#[test]
fn criterion_12_boundedness_probes() {
    criterion(12, "operator-norm probes bounded under tenfold sample growth", Duration::from_secs(300), || {
        need(suites::check_boundedness_probes(116, 200))
    });
}
