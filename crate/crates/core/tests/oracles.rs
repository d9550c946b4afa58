//! Worked examples, each checked against a value computed independently of
//! the code path under test (brute force, closed forms or quadrature).

use num_bigint::BigInt;
use num_traits::Zero;
use torheight::concave::{approximate_concave, canonical_min_form, legendre_dual, upper_envelope, AffineForm, ConcavePA};
use torheight::exact::{lvec, primitive_vector, q, qr, qvec, to_f64, ValueGroup, Q, QVector};
use torheight::heights::{
    circle_place_integral, global_height, product_formula_check, roof_from_lift, sampled_place_integral,
    CircleOptions, PeriodicPL, Place, PlaceValue, RoofInstance, SampleNode,
};
use torheight::lattice::{lattice_index, LatticeIndex};
use torheight::monge::{check_a21, integrate_cellwise, ma_measure, Atom};
use torheight::polyhedra::{
    cone_over, cone_over_complex, convex_hull, faces, normal_fan, recession, recession_fan, volume, Cone,
    PolyComplex, Polyhedron, Polytope, VolumeMode,
};
use torheight::toric::{
    degree, orbit_multiplicity, roof_restrict_to_face, support_function_of_polytope, toric_local_height,
    trop_pushforward_measure, weil_divisor_coefficients, SupportFunctionData,
};

fn pa(pieces: &[(&[i64], Q)]) -> ConcavePA {
    let v: Vec<AffineForm> = pieces.iter().map(|(s, c)| AffineForm::new(qvec(s), c.clone())).collect();
    canonical_min_form(&v).unwrap()
}

fn pts(xs: &[&[i64]]) -> Vec<QVector> {
    xs.iter().map(|x| qvec(x)).collect()
}

fn hull(xs: &[&[i64]]) -> Polytope {
    convex_hull(&pts(xs)).unwrap()
}

fn sorted(mut v: Vec<QVector>) -> Vec<QVector> {
    v.sort();
    v
}

/// Planar hull by Andrew's monotone chain.
fn monotone_chain(mut p: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    p.sort();
    p.dedup();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &x in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], x) <= 0 {
            lower.pop();
        }
        lower.push(x);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &x in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], x) <= 0 {
            upper.pop();
        }
        upper.push(x);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn shoelace(poly: &[(i64, i64)]) -> Q {
    let twice: i64 = (0..poly.len())
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum();
    qr(twice.abs(), 2)
}

#[test]
fn primitive_vectors_and_indices() {
    assert_eq!(primitive_vector(&lvec(&[2, 4])).unwrap(), lvec(&[1, 2]));
    assert_eq!(primitive_vector(&lvec(&[-3, 0, 6])).unwrap(), lvec(&[-1, 0, 2]));
    assert_eq!(primitive_vector(&lvec(&[1, 1])).unwrap(), lvec(&[1, 1]));
    assert_eq!(lattice_index(&[lvec(&[2])], 1), LatticeIndex::Finite(BigInt::from(2)));
    assert_eq!(lattice_index(&[lvec(&[1, 0]), lvec(&[0, 1])], 2), LatticeIndex::Finite(BigInt::from(1)));
    // |det [[2,0],[1,2]]| = 4
    assert_eq!(lattice_index(&[lvec(&[2, 0]), lvec(&[1, 2])], 2), LatticeIndex::Finite(BigInt::from(4)));
}

#[test]
fn hulls_and_volumes() {
    let tri = convex_hull(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), vec![qr(1, 4), qr(1, 4)]]).unwrap();
    assert_eq!(tri.vertices().len(), 3);
    assert_eq!(hull(&[&[0], &[1]]).vertices(), &pts(&[&[0], &[1]])[..]);

    let raw = [(0, 0), (1, 0), (2, 2), (0, 1), (1, 1)];
    let quad = hull(&[&[0, 0], &[1, 0], &[2, 2], &[0, 1], &[1, 1]]);
    let oracle = monotone_chain(raw.to_vec());
    let oracle_pts: Vec<QVector> = oracle.iter().map(|&(x, y)| qvec(&[x, y])).collect();
    assert_eq!(sorted(quad.vertices().to_vec()), sorted(oracle_pts));
    assert_eq!(volume(&quad, VolumeMode::Ambient), shoelace(&oracle));
    assert_eq!(volume(&quad, VolumeMode::Ambient), q(2));

    assert_eq!(volume(&hull(&[&[0, 0], &[1, 0], &[0, 1]]), VolumeMode::Ambient), qr(1, 2));
    let diag = hull(&[&[0, 0], &[2, 2]]);
    assert_eq!(volume(&diag, VolumeMode::Ambient), q(0));
    // lattice steps of (1,1) from (0,0) to (2,2)
    assert_eq!(volume(&diag, VolumeMode::Relative), q(2));
}

#[test]
fn facets_and_normal_fans() {
    let seg = faces(&hull(&[&[0], &[1]]), 0).unwrap();
    let mut got: Vec<(QVector, Vec<BigInt>)> =
        seg.iter().map(|f| (f.face.vertices()[0].clone(), f.inner_normal.clone().unwrap())).collect();
    got.sort();
    assert_eq!(got, vec![(qvec(&[0]), lvec(&[1])), (qvec(&[1]), lvec(&[-1]))]);

    let square = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    let mut normals: Vec<Vec<BigInt>> = faces(&square, 1).unwrap().into_iter().map(|f| f.inner_normal.unwrap()).collect();
    normals.sort();
    assert_eq!(normals, vec![lvec(&[-1, 0]), lvec(&[0, -1]), lvec(&[0, 1]), lvec(&[1, 0])]);
    assert_eq!(hull(&[&[0, 0], &[1, 0], &[0, 1]]).vertices().len(), 3);

    let line = normal_fan(&hull(&[&[0], &[1]])).unwrap();
    assert_eq!(line.fan.maximal_cones().count(), 2);
    let sq = normal_fan(&square).unwrap();
    assert_eq!(sq.fan.maximal_cones().count(), 4);
    for c in sq.fan.maximal_cones() {
        // each quadrant cone is spanned by two coordinate rays
        assert_eq!(c.rays().len(), 2);
        assert!(c.rays().iter().all(|r| r.iter().filter(|x| x.is_zero()).count() == 1));
    }
    let plane = normal_fan(&hull(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
    let mut rays = plane.fan.ray_generators();
    rays.sort();
    assert_eq!(rays, vec![lvec(&[-1, -1]), lvec(&[0, 1]), lvec(&[1, 0])]);
}

#[test]
fn recession_and_cones_over() {
    let half = Polyhedron::from_generators(1, &[qvec(&[3])], &[qvec(&[1])], &[]).unwrap();
    assert_eq!(recession(&half), Cone::from_rays(1, &[qvec(&[1])], &[]).unwrap());
    assert_eq!(recession(hull(&[&[0], &[1]]).as_polyhedron()), Cone::zero(1));

    let left = Polyhedron::from_generators(1, &[qvec(&[0])], &[qvec(&[-1])], &[]).unwrap();
    let mid = hull(&[&[0], &[1]]).into_inner();
    let right = Polyhedron::from_generators(1, &[qvec(&[1])], &[qvec(&[1])], &[]).unwrap();
    let complex = PolyComplex::from_cells(1, &[left, mid.clone(), right]).unwrap();
    let fan = recession_fan(&complex).unwrap();
    assert_eq!(fan.cones().len(), 3);
    assert_eq!(fan.maximal_cones().count(), 2);

    let c = cone_over(&mid).unwrap();
    assert_eq!(sorted(c.rays().to_vec()), sorted(pts(&[&[0, 1], &[1, 1]])));
    let apex = cone_over(&Polyhedron::point(qvec(&[0]))).unwrap();
    assert_eq!(apex.rays(), &pts(&[&[0, 1]])[..]);

    let two = PolyComplex::from_cells(
        1,
        &[
            Polyhedron::from_generators(1, &[qvec(&[0])], &[qvec(&[-1])], &[]).unwrap(),
            mid,
            Polyhedron::from_generators(1, &[qvec(&[1])], &[qvec(&[1])], &[]).unwrap(),
        ],
    )
    .unwrap();
    let cfan = cone_over_complex(&two).unwrap();
    assert_eq!(cfan.maximal_cones().count(), 3);
    let boundary = cfan.cones().iter().filter(|c| c.dim() == 1 && c.rays().iter().all(|r| r[1].is_zero())).count();
    assert_eq!(boundary, 2);
}

#[test]
fn canonical_forms() {
    assert_eq!(pa(&[(&[0], q(0)), (&[1], q(0)), (&[1], q(0))]).pieces().len(), 2);
    let f = pa(&[(&[0], q(0)), (&[1], q(0)), (&[2], q(0))]);
    // brute force on a grid: u is never the strict minimum
    for k in -20..=20 {
        let u = qr(k, 4);
        let direct = [q(0), u.clone(), &u * q(2)].into_iter().min().unwrap();
        assert_eq!(f.evaluate(&[u]), direct);
    }
    assert_eq!(f.slopes(), vec![qvec(&[0]), qvec(&[2])]);
    let zero = pa(&[(&[0, 0], q(0))]);
    assert_eq!(zero.induced_complex().cells().len(), 1);
}

#[test]
fn evaluation_and_stability_sets() {
    let f = pa(&[(&[0], q(0)), (&[1], q(0))]);
    assert_eq!(f.evaluate(&[qr(1, 2)]), q(0));
    assert_eq!(f.evaluate(&[q(-3)]), q(-3));
    assert_eq!(pa(&[(&[0], q(1)), (&[1], q(0))]).evaluate(&[q(1)]), q(1));
    assert_eq!(f.stability_set(), hull(&[&[0], &[1]]));
    assert_eq!(pa(&[(&[0, 0], q(0)), (&[1, 0], q(0)), (&[0, 1], q(0))]).stability_set(), hull(&[&[0, 0], &[1, 0], &[0, 1]]));
    assert_eq!(pa(&[(&[0], q(1)), (&[1], q(0))]).stability_set(), hull(&[&[0], &[1]]));
}

#[test]
fn legendre_duals() {
    assert_eq!(legendre_dual(&pa(&[(&[0], q(0)), (&[1], q(0))])).vertex_values(), vec![(qvec(&[0]), q(0)), (qvec(&[1]), q(0))]);
    let g = legendre_dual(&pa(&[(&[0], q(1)), (&[1], q(0))]));
    // inf over a grid of u of <m,u> - min(1,u), for m on a grid of [0,1]
    for j in 0..=8 {
        let m = qr(j, 8);
        let brute = (-400..=400)
            .map(|k| {
                let u = qr(k, 40);
                &m * &u - [q(1), u.clone()].into_iter().min().unwrap()
            })
            .min()
            .unwrap();
        assert_eq!(g.evaluate(std::slice::from_ref(&m)), Some(brute.clone()));
        assert_eq!(brute, m - q(1));
    }
    let simplex = legendre_dual(&pa(&[(&[0, 0], q(0)), (&[1, 0], q(0)), (&[0, 1], q(0))]));
    assert!(simplex.vertex_values().iter().all(|(_, v)| v.is_zero()));
}

#[test]
fn sup_differentials_and_recession() {
    let f = pa(&[(&[0], q(0)), (&[1], q(0))]);
    assert_eq!(f.sup_differential(&[q(0)]), hull(&[&[0], &[1]]));
    assert_eq!(f.sup_differential(&[q(5)]), hull(&[&[0]]));
    assert_eq!(pa(&[(&[1], q(0)), (&[-1], q(0))]).sup_differential(&[q(0)]), hull(&[&[-1], &[1]]));
    assert_eq!(pa(&[(&[0], q(1)), (&[1], q(0))]).recession_function(), f);
    assert_eq!(f.recession_function(), f);
    assert_eq!(pa(&[(&[0], q(3)), (&[1], q(7))]).recession_function(), f);
}

#[test]
fn upper_envelopes() {
    let t = qr(5, 3);
    let two = upper_envelope(&[(qvec(&[0]), q(0)), (qvec(&[1]), t.clone())]).unwrap();
    assert_eq!(two.evaluate(&[qr(1, 2)]), Some(&t / q(2)));
    let tent = upper_envelope(&[(qvec(&[0]), q(0)), (qvec(&[1]), q(1)), (qvec(&[2]), q(0))]).unwrap();
    for k in 0..=8 {
        let m = qr(k, 4);
        let closed = [m.clone(), q(2) - &m].into_iter().min().unwrap();
        assert_eq!(tent.evaluate(&[m]), Some(closed));
    }
    let flat = upper_envelope(&[(qvec(&[0]), q(0)), (qvec(&[1]), q(0)), (qvec(&[2]), q(0))]).unwrap();
    assert!(flat.lift()[1].active);
    assert_eq!(flat.vertex_values().len(), 2);
}

#[test]
fn approximations() {
    let delta = hull(&[&[0], &[1]]);
    let support = |u: &[f64]| u[0].min(0.0);
    for k in [1, 3] {
        assert_eq!(approximate_concave(&support, &delta, 0.0, k).unwrap().function, pa(&[(&[0], q(0)), (&[1], q(0))]));
    }
    let shifted = |u: &[f64]| u[0].min(1.0);
    assert_eq!(approximate_concave(&shifted, &delta, 1.0, 1).unwrap().function, pa(&[(&[0], q(1)), (&[1], q(0))]));
    // dual m(1-m): psi(u) = inf_m (mu - m(1-m)) = -(1-u)^2/4 on [-1,1], linear beyond
    let smooth = |u: &[f64]| {
        let x = u[0];
        if x <= -1.0 {
            x
        } else if x >= 1.0 {
            0.0
        } else {
            -(1.0 - x).powi(2) / 4.0
        }
    };
    let approx = approximate_concave(&smooth, &delta, 1.0, 4).unwrap();
    let dual = legendre_dual(&approx.function);
    for j in 0..=40 {
        let m = qr(j, 40);
        let exact = to_f64(&m) * (1.0 - to_f64(&m));
        let got = to_f64(&dual.evaluate(&[m]).unwrap());
        assert!((got - exact).abs() <= 1.0 / 16.0, "m = {j}/40: {got} vs {exact}");
    }
}

#[test]
fn monge_ampere_examples() {
    let atom = |at: &[i64], mass: Q| Atom { at: qvec(at), mass };
    assert_eq!(ma_measure(&pa(&[(&[0], q(0)), (&[1], q(0))])).atoms(), &[atom(&[0], q(1))]);
    assert_eq!(ma_measure(&pa(&[(&[1], q(0)), (&[-1], q(0))])).atoms(), &[atom(&[0], q(2))]);
    assert_eq!(ma_measure(&pa(&[(&[0, 0], q(0)), (&[1, 0], q(0)), (&[0, 1], q(0))])).atoms(), &[atom(&[0, 0], qr(1, 2))]);

    let zero = upper_envelope(&[(qvec(&[0, 0]), q(0)), (qvec(&[3, 0]), q(0)), (qvec(&[0, 2]), q(0))]).unwrap();
    assert_eq!(integrate_cellwise(&zero), q(0));
    assert_eq!(integrate_cellwise(&legendre_dual(&pa(&[(&[0], q(1)), (&[1], q(0))]))), qr(-1, 2));
    let tent = upper_envelope(&[(qvec(&[0]), q(0)), (qvec(&[1]), q(1)), (qvec(&[2]), q(0))]).unwrap();
    assert_eq!(integrate_cellwise(&tent), q(1));

    for (f, lhs) in [
        (pa(&[(&[0], q(0)), (&[1], q(0))]), q(0)),
        (pa(&[(&[0], q(1)), (&[1], q(0))]), q(-1)),
        (pa(&[(&[1], q(0)), (&[-1], q(0))]), q(0)),
    ] {
        let sides = check_a21(&f).unwrap();
        assert_eq!(sides.lhs, lhs);
        assert!(sides.holds());
    }
}

#[test]
fn support_functions_and_divisors() {
    let line = support_function_of_polytope(&hull(&[&[0], &[1]])).unwrap();
    assert_eq!(line.min_form(), pa(&[(&[0], q(0)), (&[1], q(0))]));
    let plane = support_function_of_polytope(&hull(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
    assert_eq!(plane.min_form(), pa(&[(&[0, 0], q(0)), (&[1, 0], q(0)), (&[0, 1], q(0))]));
    let big = support_function_of_polytope(&hull(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
    for u in pts(&[&[1, 0], &[0, 1], &[-1, -1], &[3, -2], &[-1, 4]]) {
        let direct = pts(&[&[0, 0], &[2, 0], &[0, 2]]).iter().map(|m| &m[0] * &u[0] + &m[1] * &u[1]).min().unwrap();
        assert_eq!(big.evaluate(&u), direct);
    }

    let flags = line.flags();
    assert!(flags.concave && flags.strictly_concave);
    let neg = Cone::from_rays(1, &[qvec(&[-1])], &[]).unwrap();
    let pos = Cone::from_rays(1, &[qvec(&[1])], &[]).unwrap();
    let flat = SupportFunctionData::new(1, &[neg.clone(), pos.clone()], &[qvec(&[0]), qvec(&[0])]).unwrap().flags();
    assert!(flat.concave && !flat.strictly_concave);
    let max_shape = SupportFunctionData::new(1, &[neg, pos], &[qvec(&[0]), qvec(&[1])]).unwrap();
    assert!(!max_shape.flags().concave);
    assert!(max_shape.evaluate(&[q(1)]) > pa(&[(&[0], q(0)), (&[1], q(0))]).evaluate(&[q(1)]));

    let w = weil_divisor_coefficients(&line);
    assert_eq!(w.ray_coefficients, vec![(lvec(&[-1]), BigInt::from(1)), (lvec(&[1]), BigInt::from(0))]);
    let zero = support_function_of_polytope(&hull(&[&[0, 0]])).unwrap();
    assert!(weil_divisor_coefficients(&zero).ray_coefficients.iter().all(|(_, c)| c.is_zero()));
    let p2 = weil_divisor_coefficients(&plane);
    assert_eq!(p2.ray_coefficients, vec![(lvec(&[-1, -1]), BigInt::from(1)), (lvec(&[0, 1]), BigInt::from(0)), (lvec(&[1, 0]), BigInt::from(0))]);

    assert_eq!(degree(&line).unwrap(), BigInt::from(1));
    assert_eq!(degree(&plane).unwrap(), BigInt::from(1));
    assert_eq!(degree(&support_function_of_polytope(&hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap()).unwrap(), BigInt::from(2));
}

#[test]
fn multiplicities() {
    let z = ValueGroup::Discrete(q(1));
    assert_eq!(orbit_multiplicity(&Polyhedron::point(vec![qr(1, 2)]), &z).multiplicity, BigInt::from(2));
    assert_eq!(orbit_multiplicity(&Polyhedron::point(qvec(&[0])), &z).multiplicity, BigInt::from(1));
    assert_eq!(orbit_multiplicity(&Polyhedron::point(vec![qr(1, 3)]), &ValueGroup::Divisible).multiplicity, BigInt::from(1));
}

#[test]
fn local_heights_and_pushforwards() {
    let line = support_function_of_polytope(&hull(&[&[0], &[1]])).unwrap();
    assert_eq!(toric_local_height(&line, &line.min_form()).unwrap().value, q(0));
    let c = qr(3, 7);
    let lowered = line.min_form().add_affine(&qvec(&[0]), &-c.clone());
    // ∫_0^1 (Ψ - c)^∨ = c, times 2!
    assert_eq!(toric_local_height(&line, &lowered).unwrap().value, q(2) * &c);
    let metric = pa(&[(&[0], q(1)), (&[1], q(0))]);
    assert_eq!(toric_local_height(&line, &metric).unwrap().value, q(-1));

    let atom = |at: &[i64], mass: i64| Atom { at: qvec(at), mass: q(mass) };
    assert_eq!(trop_pushforward_measure(&line.min_form()).atoms(), &[atom(&[0], 1)]);
    assert_eq!(trop_pushforward_measure(&pa(&[(&[0, 0], q(0)), (&[1, 0], q(0)), (&[0, 1], q(0))])).atoms(), &[atom(&[0, 0], 1)]);
    assert_eq!(trop_pushforward_measure(&metric).atoms(), &[atom(&[1], 1)]);

    let full = roof_restrict_to_face(&metric, &line, &Cone::zero(1), None).unwrap();
    assert_eq!(full.vertex_values(), legendre_dual(&metric).vertex_values());
    let pos = Cone::from_rays(1, &[qvec(&[1])], &[]).unwrap();
    assert_eq!(roof_restrict_to_face(&metric, &line, &pos, None).unwrap().vertex_values(), vec![(qvec(&[0]), q(-1))]);
    let neg = Cone::from_rays(1, &[qvec(&[-1])], &[]).unwrap();
    assert_eq!(roof_restrict_to_face(&metric, &line, &neg, None).unwrap().vertex_values(), vec![(qvec(&[0]), q(0))]);
}

fn line_instance(places: Vec<Place>) -> RoofInstance {
    RoofInstance::new(1, vec![lvec(&[0]), lvec(&[1])], places).unwrap()
}

fn tent() -> PeriodicPL {
    PeriodicPL::new(q(1), vec![(q(0), q(0)), (qr(1, 2), qr(1, 2))]).unwrap()
}

#[test]
fn roofs_and_places() {
    let f = Place::finite("p", q(1), q(1), &[0, -1]);
    assert_eq!(roof_from_lift(&line_instance(vec![f.clone()]), &f).unwrap().1, qr(1, 2));
    let z = Place::point("z", q(1), vec![q(0), q(0)]);
    assert_eq!(roof_from_lift(&line_instance(vec![z.clone()]), &z).unwrap().1, q(0));
    let t = Place::point("t", q(1), vec![q(0), q(1), q(0)]);
    let three = RoofInstance::new(1, vec![lvec(&[0]), lvec(&[1]), lvec(&[2])], vec![t.clone()]).unwrap();
    assert_eq!(roof_from_lift(&three, &t).unwrap().1, q(1));

    let zero = PeriodicPL::constant(q(1), q(0)).unwrap();
    let circle = Place::circle("v", q(1), q(1), vec![zero.clone(), tent()]);
    let r = circle_place_integral(&line_instance(vec![circle.clone()]), &circle, &CircleOptions::default()).unwrap();
    assert_eq!(r.exact_value(), Some(qr(1, 8)));
    let constant = Place::circle("c", q(1), q(1), vec![zero, PeriodicPL::constant(q(1), qr(2, 3)).unwrap()]);
    let rc = circle_place_integral(&line_instance(vec![constant.clone()]), &constant, &CircleOptions::default()).unwrap();
    assert_eq!(rc.exact_value(), Some(qr(1, 3)));

    let node = |w: f64, l: [f64; 2]| SampleNode { subweight: w, lambdas: l.to_vec() };
    for (nodes, want) in [
        (vec![node(1.0, [0.0, 0.0])], 0.0),
        (vec![node(1.0, [0.0, 1.0])], 0.5),
        (vec![node(0.5, [0.0, 0.0]), node(0.5, [0.0, 1.0])], 0.25),
    ] {
        let s = Place::sampled("s", q(1), nodes);
        assert_eq!(sampled_place_integral(&line_instance(vec![s.clone()]), &s).unwrap(), want);
    }
}

/// Composite Simpson on `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

#[test]
fn subdivision_change_against_quadrature() {
    let zero = PeriodicPL::constant(q(2), q(0)).unwrap();
    let peak = PeriodicPL::new(q(2), vec![(q(0), q(0)), (q(1), q(1))]).unwrap();
    let place = Place::circle("v", q(1), q(2), vec![zero.clone(), peak, zero]);
    let inst = RoofInstance::new(1, vec![lvec(&[0]), lvec(&[1]), lvec(&[2])], vec![place.clone()]).unwrap();
    let r = circle_place_integral(&inst, &place, &CircleOptions::default()).unwrap();
    // roof over {0,1,2} with heights (0, h, 0): ∫ = max(h, 0); average over the circle
    let lambda = |u: f64| if u <= 1.0 { u } else { 2.0 - u };
    let oracle = simpson(|u| lambda(u).max(0.0), 0.0, 1.0, 2_000) + simpson(|u| lambda(u).max(0.0), 1.0, 2.0, 2_000);
    assert!((r.value() - oracle / 2.0).abs() < 1e-10);
    assert!(r.exact);
}

#[test]
fn global_heights_and_product_formula() {
    let inst = line_instance(vec![
        Place::finite("p", q(1), q(1), &[0, -1]),
        Place::circle("v", q(1), q(1), vec![PeriodicPL::constant(q(1), q(0)).unwrap(), tent()]),
    ]);
    assert_eq!(global_height(&inst, &CircleOptions::default()).unwrap().exact_total, Some(qr(5, 4)));
    let zero = line_instance(vec![Place::point("z", q(2), vec![q(0), q(0)])]);
    assert_eq!(global_height(&zero, &CircleOptions::default()).unwrap().exact_total, Some(q(0)));
    let (mu, t) = (qr(3, 2), qr(-4, 5));
    let lin = line_instance(vec![Place::point("w", mu.clone(), vec![q(0), t.clone()])]);
    assert_eq!(global_height(&lin, &CircleOptions::default()).unwrap().exact_total, Some(mu * t));

    let e = |w: i64, v: Q| (q(w), PlaceValue::Exact(v));
    assert!(product_formula_check(&[e(1, q(1)), e(1, q(-1))]).compatible);
    assert!(!product_formula_check(&[e(1, q(1))]).compatible);
    let profile = PeriodicPL::new(q(1), vec![(q(0), q(0)), (qr(1, 2), q(2))]).unwrap();
    // trapezoid rule is exact for the piecewise-linear profile
    let avg = simpson(|u| if u <= 0.5 { 4.0 * u } else { 4.0 - 4.0 * u }, 0.0, 1.0, 1000);
    assert!((to_f64(&profile.average()) - avg).abs() < 1e-12);
    assert!(product_formula_check(&[e(1, q(-1)), e(1, profile.average())]).compatible);
}
