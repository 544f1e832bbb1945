use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hecke_bench::{normalize_all, random_factor_lists};
use hecke_core::exactalg::{qi, FactoredFunction};
use hecke_core::langlands::{gamma0, param_from_residual_point};
use hecke_core::rootdata::preset;
use hecke_core::spectral::{enumerate_residual_cosets, enumerate_residual_points, HeckeSpec};
use hecke_core::stm::{discover_stms, verify_stm, DiscoveryBounds, SpectralMap};

fn iwahori(name: &str) -> HeckeSpec {
    HeckeSpec::iwahori(preset(name).unwrap()).unwrap()
}

fn exactalg(c: &mut Criterion) {
    let lists = random_factor_lists(200, 3, 1);
    c.bench_function("normalize 200 products", |b| b.iter(|| normalize_all(black_box(&lists))));
}

fn residual(c: &mut Criterion) {
    let mut g = c.benchmark_group("residual points");
    for name in ["B2-sc", "G2", "A3-sc", "B3-sc"] {
        let spec = iwahori(name);
        g.bench_function(name, |b| b.iter(|| enumerate_residual_points(black_box(&spec)).unwrap()));
    }
    g.finish();
    let spec = iwahori("G2");
    c.bench_function("residual cosets G2", |b| b.iter(|| enumerate_residual_cosets(black_box(&spec)).unwrap()));
}

fn gamma(c: &mut Criterion) {
    let spec = iwahori("G2");
    let points = enumerate_residual_points(&spec).unwrap();
    c.bench_function("gamma0 at G2 points", |b| {
        b.iter(|| {
            for p in &points {
                gamma0(&param_from_residual_point(&spec, &p.r_l).unwrap()).unwrap();
            }
        })
    });
}

fn stm(c: &mut Criterion) {
    // 1/(3 [3]) with [3] = v^-2 (1 - v^6) / (1 - v^2)
    let d = FactoredFunction::v_power(qi(-2))
        .mul(&FactoredFunction::factor(qi(0), qi(6), vec![]))
        .and_then(|f| f.div(&FactoredFunction::factor(qi(0), qi(2), vec![])))
        .and_then(|f| f.scale(&hecke_core::exactalg::bigi(3)))
        .and_then(|f| f.inv())
        .unwrap();
    let source = HeckeSpec::rank_zero(d).unwrap();
    let target = iwahori("A2-sc");
    c.bench_function("discover A2 bound 2", |b| {
        b.iter(|| discover_stms(black_box(&source), &target, DiscoveryBounds::uniform(2)).unwrap())
    });
    let id = SpectralMap::identity(&iwahori("G2"));
    c.bench_function("verify identity G2", |b| b.iter(|| verify_stm(black_box(&id)).unwrap()));
}

criterion_group!(benches, exactalg, residual, gamma, stm);
criterion_main!(benches);
