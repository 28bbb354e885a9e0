mod common;

use common::*;
use lebesgue_mesh::basis::{vandermonde, BasisDescriptor};
use lebesgue_mesh::mesh::{build_mesh, mesh_factor, Domain};
use lebesgue_mesh::points::PointSet;
use lebesgue_mesh::points1d::{chebyshev_zeros, equispaced, NodeKind};
use lebesgue_mesh::pointsets::{generate, padua, Family};
use lebesgue_mesh::projector::Projector;
use proptest::prelude::*;

const ZEROS: NodeKind = NodeKind::ChebyshevZeros;

fn sandwich(domain: &Domain, n: usize, samples: &PointSet, seed: u64, polys: usize) {
    let mesh = build_mesh(domain, n, 3.0, ZEROS).unwrap();
    let basis = BasisDescriptor::for_domain(domain, n).unwrap();
    let coeffs = random_coefficients(basis.len(), polys, seed);
    let on_mesh = eval_polys(&basis, &coeffs, mesh.points());
    let on_samples = eval_polys(&basis, &coeffs, samples);
    for (j, (pm, ps)) in on_mesh.iter().zip(&on_samples).enumerate() {
        let (mm, my) = (max_abs(pm), max_abs(ps));
        assert!(
            my <= mesh.factor() * mm + 1e-12 * my,
            "{} d={} n={n} poly {j}: sup {my} > {} * {mm}",
            domain.name(),
            domain.dim(),
            mesh.factor()
        );
    }
}

#[test]
fn norming_sandwich_on_all_reference_domains() {
    let mut domains: Vec<Domain> = (1..=3).map(Domain::cube).collect();
    domains.extend((1..=3).map(Domain::unit_simplex));
    domains.extend((2..=3).map(Domain::unit_ball));
    for domain in &domains {
        let samples = domain_samples(domain, 100_000);
        for n in [3, 8] {
            sandwich(domain, n, &samples, 1000 + n as u64, 50);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norming_sandwich_on_affine_images(
        kind in 0usize..3,
        n in 1usize..7,
        seed in 0u64..1000,
        shift in -2.0f64..2.0,
        scale in 0.1f64..3.0,
    ) {
        let domain = match kind {
            0 => Domain::Box { lo: vec![shift, -scale], hi: vec![shift + scale, 2.0 * scale] },
            1 => Domain::Simplex { vertices: vec![vec![shift, 0.0], vec![shift + scale, 0.5], vec![shift, scale]] },
            _ => Domain::Ball { center: vec![shift, -shift], radius: scale },
        };
        let samples = domain_samples(&domain, 5000);
        sandwich(&domain, n, &samples, seed, 5);
    }

    #[test]
    fn finer_meshes_tighten_the_factor(n in 1usize..30, m in 2usize..12, extra in 1usize..5) {
        let coarse = mesh_factor(n, m as f64, 1, 1).unwrap();
        let fine = mesh_factor(n, (m + extra) as f64, 1, 1).unwrap();
        prop_assert!(fine.total < coarse.total);
        prop_assert!(fine.total >= 1.0);
    }

    #[test]
    fn lower_bound_is_at_least_one(family in 0usize..4, n in 1usize..12) {
        let (domain, fam) = match family {
            0 => (Domain::cube(1), Family::Chebyshev),
            1 => (Domain::cube(1), Family::Equispaced),
            2 => (Domain::cube(2), Family::Padua),
            _ => (Domain::unit_simplex(2), Family::SimplexGrid),
        };
        let nodes = generate(&fam, &domain, n, 3.0, ZEROS).unwrap();
        let p = Projector::interpolation(&nodes.points, n, &domain).unwrap();
        let e = p.estimate(&build_mesh(&domain, n, 3.0, ZEROS).unwrap()).unwrap();
        prop_assert!(e.lower >= 1.0 - 1e-10);
        prop_assert!(e.lower <= e.midpoint && e.midpoint <= e.upper);
    }
}

#[test]
fn cardinality_formulas() {
    for (domain, fa_ft_pow) in [
        (Domain::cube(2), 1usize),
        (Domain::cube(3), 1),
        (Domain::unit_simplex(2), 1),
        (Domain::unit_simplex(3), 1),
        (Domain::unit_ball(2), 2),
        (Domain::unit_ball(3), 4),
    ] {
        for (n, m) in [(3, 3.0), (5, 4.0), (4, 2.5)] {
            let nu = ((m * n as f64) - 1e-9).ceil() as usize;
            let mesh = build_mesh(&domain, n, m, ZEROS).unwrap();
            assert_eq!(mesh.len(), fa_ft_pow * nu.pow(domain.dim() as u32), "{} n={n} m={m}", domain.name());
        }
    }
}

#[test]
fn vandermonde_conditioning_on_square_mesh() {
    let domain = Domain::cube(2);
    let mesh = build_mesh(&domain, 10, 3.0, ZEROS).unwrap();
    let basis = BasisDescriptor::for_domain(&domain, 10).unwrap();
    let v = vandermonde(mesh.points(), &basis).unwrap();
    let s = singular_values(v.nrows(), v.ncols(), v.as_slice());
    let cond = s[0] / s[s.len() - 1];
    assert!(cond < 1e3, "cond {cond}");
}

#[test]
fn interval_width_shrinks_quadratically_in_m() {
    let domain = Domain::cube(2);
    let nodes = padua(8).unwrap().points;
    let p = Projector::interpolation(&nodes, 8, &domain).unwrap();
    let e10 = p.estimate(&build_mesh(&domain, 8, 10.0, ZEROS).unwrap()).unwrap();
    let e20 = p.estimate(&build_mesh(&domain, 8, 20.0, ZEROS).unwrap()).unwrap();
    let ratio = (e20.upper - e20.lower) / e20.lower / ((e10.upper - e10.lower) / e10.lower);
    assert!((ratio - 0.25).abs() <= 0.2 * 0.25, "ratio {ratio}");
}

#[test]
fn intervals_for_different_m_intersect_and_contain_oracle() {
    let domain = Domain::cube(2);
    let nodes = padua(10).unwrap().points;
    let p = Projector::interpolation(&nodes, 10, &domain).unwrap();
    let oracle = LagrangeOracle::new(&nodes, &domain, 10);
    let samples = domain_samples(&domain, 100_000);
    let mut dense = oracle.max_over(&samples);
    let mut intervals = Vec::new();
    for m in [3.0, 5.0, 8.0] {
        let mesh = build_mesh(&domain, 10, m, ZEROS).unwrap();
        dense = dense.max(oracle.max_over(mesh.points()));
        let e = p.estimate(&mesh).unwrap();
        intervals.push((e.lower, e.upper));
    }
    for &(lo, hi) in &intervals {
        assert!(lo * (1.0 - 1e-9) <= dense && dense <= hi, "oracle {dense} outside [{lo}, {hi}]");
    }
    let lo = intervals.iter().map(|i| i.0).fold(0.0, f64::max);
    let hi = intervals.iter().map(|i| i.1).fold(f64::INFINITY, f64::min);
    assert!(lo <= hi);
}

#[test]
fn one_dimensional_brackets() {
    let domain = Domain::cube(1);
    let grid = equispaced(200_000, -1.0, 1.0).unwrap();
    for (fam, nodes) in [
        (Family::Chebyshev, chebyshev_zeros(11).unwrap()),
        (Family::Equispaced, equispaced(10, -1.0, 1.0).unwrap()),
    ] {
        let set = generate(&fam, &domain, 10, 3.0, ZEROS).unwrap();
        let p = Projector::interpolation(&set.points, 10, &domain).unwrap();
        let e = p.estimate(&build_mesh(&domain, 10, 3.0, ZEROS).unwrap()).unwrap();
        let oracle = max_lagrange_lebesgue_1d(&nodes, &grid);
        assert!(e.lower <= oracle * (1.0 + 1e-12) && oracle <= e.upper, "{fam}: {oracle} vs [{}, {}]", e.lower, e.upper);
    }
    // equispaced n = 10: 29.89...
    let nodes = equispaced(10, -1.0, 1.0).unwrap();
    let oracle = max_lagrange_lebesgue_1d(&nodes, &grid);
    assert!((oracle - 29.9).abs() < 0.05, "{oracle}");
}

#[test]
fn cube_mesh_as_general_mesh() {
    // a degree-2n cube mesh used as an admissible mesh with c = its factor at 2n
    let domain = Domain::cube(2);
    let nodes = padua(6).unwrap().points;
    let p = Projector::interpolation(&nodes, 6, &domain).unwrap();
    let mesh = build_mesh(&domain, 12, 3.0, ZEROS).unwrap();
    let g = p.estimate_on_general_mesh(mesh.points(), mesh.factor(), 2).unwrap();
    assert!((g.factor - mesh.factor().sqrt()).abs() < 1e-15);
    let lagrange = LagrangeOracle::new(&nodes, &domain, 6);
    let oracle = lagrange.max_over(&domain_samples(&domain, 50_000)).max(lagrange.max_over(mesh.points()));
    assert!(g.lower <= oracle * (1.0 + 1e-9) && oracle <= g.upper, "{oracle} vs [{}, {}]", g.lower, g.upper);
}

#[test]
fn lobatto_meshes_certify_too() {
    let domain = Domain::unit_ball(2);
    let nodes = generate(&Family::Afp, &domain, 6, 4.0, NodeKind::ChebyshevLobatto).unwrap().points;
    let p = Projector::interpolation(&nodes, 6, &domain).unwrap();
    let e = p.estimate(&build_mesh(&domain, 6, 4.0, NodeKind::ChebyshevLobatto).unwrap()).unwrap();
    let oracle = LagrangeOracle::new(&nodes, &domain, 6).max_over(&domain_samples(&domain, 50_000));
    assert!(oracle <= e.upper, "{oracle} > {}", e.upper);
}
