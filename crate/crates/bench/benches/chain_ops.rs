use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cychom_core::chain::Chain;
use cychom_core::cyclic::hcyc::CyclicContraction;
use cychom_core::cyclic::{connes, hochschild, GroupRingOf};
use cychom_core::group::GroupModel;
use cychom_core::sample::Sampler;
use cychom_core::tilt::{alternate_cone, CounitCone};

fn bench_mixed_operators(c: &mut Criterion) {
    let model = GroupModel::by_name("s3").unwrap();
    let ring = GroupRingOf { model: &model };
    let mut s = Sampler::new(1);
    let forms: Vec<_> = (0..64).map(|_| s.form(&model, 2, 4, true)).collect();
    c.bench_function("hochschild_degree4_s3", |b| {
        b.iter(|| {
            for f in &forms {
                black_box(hochschild(&ring, black_box(f)));
            }
        })
    });
    c.bench_function("connes_degree4_s3", |b| {
        b.iter(|| {
            for f in &forms {
                black_box(connes(&ring, black_box(f)));
            }
        })
    });
}

fn bench_cyclic_contraction(c: &mut Criterion) {
    let model = GroupModel::lattice(2);
    let mut s = Sampler::new(2);
    let forms: Vec<_> = (0..8).map(|_| s.form(&model, 2, 2, true)).collect();
    let h = CyclicContraction::new(&model, &model.identity()).unwrap();
    c.bench_function("cyclic_contraction_lattice2", |b| {
        b.iter(|| {
            for f in &forms {
                black_box(h.apply(black_box(f)));
            }
        })
    });
}

fn bench_cone_contraction(c: &mut Criterion) {
    let model = GroupModel::dihedral();
    let v = cychom_core::group::Elem::Dihedral { t: 0, flip: true };
    let cone = CounitCone::new(&model, &v).unwrap();
    let mut s = Sampler::new(3);
    let elts: Vec<Chain<_>> = (0..4)
        .filter_map(|_| {
            let alpha = s.bar_in_class(&model, &v, 2, 1)?;
            let w = s.form(&model, 2, 2, true);
            let c = alternate_cone(&Chain::generator(cychom_core::tilt::ConeElt::Upstairs(
                cychom_core::tilt::BarFactor::Simplex(alpha),
                w,
            )));
            (!c.is_zero()).then_some(c)
        })
        .collect();
    c.bench_function("cone_contraction_dihedral", |b| {
        b.iter(|| {
            for x in &elts {
                black_box(cone.contraction(black_box(x)).unwrap());
            }
        })
    });
}

criterion_group!(
    benches,
    bench_mixed_operators,
    bench_cyclic_contraction,
    bench_cone_contraction
);
criterion_main!(benches);
