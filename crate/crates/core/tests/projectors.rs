mod common;

use common::*;
use lebesgue_mesh::basis::BasisDescriptor;
use lebesgue_mesh::compress::compress;
use lebesgue_mesh::mesh::{build_mesh, Domain};
use lebesgue_mesh::points::PointSet;
use lebesgue_mesh::points1d::{gauss_legendre_lobatto, NodeKind};
use lebesgue_mesh::pointsets::{afp_extract, dlp_extract, halton, halton_in, morrow_patterson, padua, simplex_grid};
use lebesgue_mesh::projector::{hyper_disk, hyper_square_chebyshev, Projector};
use proptest::prelude::*;

const ZEROS: NodeKind = NodeKind::ChebyshevZeros;

/// Largest relative reproduction error over random polynomials of degree n.
fn reproduction_error(p: &Projector, grid: &PointSet, polys: usize, seed: u64) -> f64 {
    let basis = BasisDescriptor::for_domain(p.domain(), p.degree()).unwrap();
    let coeffs = random_coefficients(basis.len(), polys, seed);
    let at_nodes = eval_polys(&basis, &coeffs, p.nodes());
    let exact = eval_polys(&basis, &coeffs, grid);
    at_nodes
        .iter()
        .zip(&exact)
        .map(|(s, e)| {
            let got = p.apply(s, grid).unwrap();
            let err = got.iter().zip(e).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            err / max_abs(e)
        })
        .fold(0.0, f64::max)
}

#[test]
fn interpolation_cardinality() {
    let domain = Domain::cube(2);
    let nodes = padua(10).unwrap().points;
    let p = Projector::interpolation(&nodes, 10, &domain).unwrap();
    for j in 0..nodes.len() {
        let mut e = vec![0.0; nodes.len()];
        e[j] = 1.0;
        let vals = p.apply(&e, &nodes).unwrap();
        for (i, v) in vals.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((v - want).abs() <= 1e-10, "ℓ_{j}(ξ_{i}) = {v}");
        }
    }
}

#[test]
fn projectors_reproduce_polynomials() {
    let square = Domain::cube(2);
    let disk = Domain::unit_ball(2);
    let grid = square_grid(61, false);
    let disk_grid = square_grid(61, true);

    let p = Projector::interpolation(&padua(10).unwrap().points, 10, &square).unwrap();
    assert!(reproduction_error(&p, &grid, 50, 1) <= 1e-9);

    let h = halton_in(&square, 2000).unwrap().points;
    let p = Projector::weighted_ls(&h, &vec![1.0; h.len()], 10, &square).unwrap();
    assert!(reproduction_error(&p, &grid, 50, 2) <= 1e-9);

    let (x, w) = hyper_square_chebyshev(10).unwrap();
    let p = Projector::weighted_ls(&x, &w, 10, &square).unwrap();
    assert!(reproduction_error(&p, &grid, 50, 3) <= 1e-9);

    let (x, w) = hyper_disk(10).unwrap();
    let p = Projector::weighted_ls(&x, &w, 10, &disk).unwrap();
    assert!(reproduction_error(&p, &disk_grid, 50, 4) <= 1e-9);

    let tri = Domain::unit_simplex(2);
    let p = Projector::interpolation(&simplex_grid(8, &tri).unwrap().points, 8, &tri).unwrap();
    let tri_grid = domain_samples(&tri, 2000);
    assert!(reproduction_error(&p, &tri_grid, 20, 5) <= 1e-9);
}

#[test]
fn disk_rule_is_exact_to_degree_2n() {
    for n in [3, 10] {
        let (x, w) = hyper_disk(n).unwrap();
        for a in 0..=2 * n as u32 {
            for b in 0..=2 * n as u32 - a {
                let q: f64 = x.iter().zip(&w).map(|(p, wi)| wi * p[0].powi(a as i32) * p[1].powi(b as i32)).sum();
                assert!((q - disk_monomial_moment(a, b)).abs() <= 1e-11, "x^{a}y^{b}");
            }
        }
    }
}

#[test]
fn lebesgue_function_is_deterministic() {
    let domain = Domain::unit_ball(2);
    let mesh = build_mesh(&domain, 8, 4.0, ZEROS).unwrap();
    let nodes = afp_extract(&mesh, 8).unwrap().points;
    let p = Projector::interpolation(&nodes, 8, &domain).unwrap();
    let a = p.lebesgue_function(mesh.points()).unwrap();
    let b = p.lebesgue_function(mesh.points()).unwrap();
    assert_eq!(a, b);
    let lo = a.iter().fold(0.0, |m: f64, v| m.max(*v));
    assert_eq!(lo, p.lebesgue_max(mesh.points()).unwrap());
}

#[test]
fn compressed_measure_keeps_the_kernel() {
    let square = Domain::cube(2);
    let n = 6;
    let mesh = build_mesh(&square, 2 * n, 3.0, ZEROS).unwrap();
    let ones = vec![1.0; mesh.len()];
    let c = compress(mesh.points(), None, n, &square, 1e-12).unwrap();
    assert!(c.moment_residual <= 1e-12 * c.moment_norm);
    assert!(c.support_card() <= lebesgue_mesh::basis::poly_dim(2, 2 * n));
    assert!(c.weights.iter().all(|&w| w > 0.0));
    let total: f64 = c.weights.iter().sum();
    assert!((total - mesh.len() as f64).abs() <= 1e-10 * mesh.len() as f64);

    let full = Projector::weighted_ls(mesh.points(), &ones, n, &square).unwrap();
    let comp = Projector::weighted_ls(&c.points, &c.weights, n, &square).unwrap();
    let pairs = domain_samples(&Domain::cube(4), 300);
    for q in pairs.iter() {
        let (kf, kc) = (full.kernel(&q[..2], &q[2..]).unwrap(), comp.kernel(&q[..2], &q[2..]).unwrap());
        assert!((kf - kc).abs() <= 1e-8, "{kf} vs {kc}");
    }
}

#[test]
fn one_dimensional_afp_approach_lobatto() {
    for n in [5, 8] {
        let mesh = build_mesh(&Domain::cube(1), n, 20.0, ZEROS).unwrap();
        let mut afp: Vec<f64> = afp_extract(&mesh, n).unwrap().points.coords().to_vec();
        let mut gll = gauss_legendre_lobatto(n).unwrap();
        assert_eq!(afp.len(), gll.len());
        afp.sort_by(f64::total_cmp);
        gll.sort_by(f64::total_cmp);
        for (a, g) in afp.iter().zip(&gll) {
            assert!((a - g).abs() <= 0.05, "n={n}: {a} vs {g}");
        }
    }
}

#[test]
fn extracted_points_are_mesh_points() {
    for domain in [Domain::cube(2), Domain::unit_simplex(2), Domain::unit_ball(2)] {
        let mesh = build_mesh(&domain, 5, 3.0, ZEROS).unwrap();
        for set in [afp_extract(&mesh, 5).unwrap(), dlp_extract(&mesh, 5).unwrap()] {
            assert_eq!(set.points.len(), 21);
            for p in set.points.iter() {
                assert!(mesh.points().iter().any(|q| q == p));
            }
        }
    }
}

#[test]
fn discrete_leja_points_are_nested() {
    let mesh = build_mesh(&Domain::cube(2), 8, 3.0, ZEROS).unwrap();
    let small = dlp_extract(&mesh, 4).unwrap().points;
    let big = dlp_extract(&mesh, 8).unwrap().points;
    assert_eq!(small.coords(), &big.coords()[..small.coords().len()]);
}

#[test]
fn square_families_stay_in_the_square() {
    for n in [4, 10, 16] {
        assert!(padua(n).unwrap().points.iter().all(|p| p.iter().all(|v| v.abs() <= 1.0)));
        let mp = morrow_patterson(n).unwrap().points;
        assert_eq!(mp.len(), (n + 1) * (n + 2) / 2);
        assert!(mp.iter().all(|p| p.iter().all(|v| v.abs() < 1.0)));
    }
}

proptest! {
    #[test]
    fn halton_is_prefix_stable(d in 1usize..5, k in 1usize..60, extra in 0usize..60) {
        let a = halton(d, k).unwrap().points;
        let b = halton(d, k + extra).unwrap().points;
        prop_assert_eq!(a.coords(), &b.coords()[..a.coords().len()]);
    }

    #[test]
    fn halton_in_ball_is_prefix_stable(k in 1usize..50, extra in 0usize..50) {
        let ball = Domain::unit_ball(3);
        let a = halton_in(&ball, k).unwrap().points;
        let b = halton_in(&ball, k + extra).unwrap().points;
        prop_assert_eq!(a.coords(), &b.coords()[..a.coords().len()]);
        prop_assert!(b.iter().all(|p| ball.contains(p, 0.0)));
    }
}
