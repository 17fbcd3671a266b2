mod common;

use localhom::complex::{build_rips, restrict_to_vertices, Filtration};
use localhom::diagram::{DiagramPoint, PersistenceDiagram};
use localhom::geometry::{split_by_ball, LocalQuery, PointCloud};
use localhom::local::r_pipeline;
use localhom::metric::bottleneck_distance;
use localhom::persistence::{reduce, relative_reduce};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

fn euler(f: &Filtration, threshold: f64) -> i64 {
    f.sublevel(threshold)
        .map(|c| if c.simplex.dim() % 2 == 0 { 1 } else { -1 })
        .sum()
}

fn alternating_essential(d: &PersistenceDiagram) -> i64 {
    d.points()
        .iter()
        .filter(|p| p.is_essential())
        .map(|p| if p.dim % 2 == 0 { 1 } else { -1 })
        .sum()
}

fn random_cloud(rng: &mut impl Rng, max_n: usize, dim: usize) -> PointCloud {
    let n = rng.gen_range(1..=max_n);
    PointCloud::new(
        (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tie_order_does_not_change_the_diagram(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_filtration(&mut rng, 120);
        let top = f.max_dim().unwrap();
        let mut cells: Vec<_> = f.cells().iter().map(|c| (c.simplex.clone(), c.value)).collect();
        cells.shuffle(&mut rng);
        // any order by (value, dim) is a valid filtration order
        cells.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.dim().cmp(&b.0.dim())));
        let shuffled = Filtration::with_order(cells).unwrap();
        prop_assert_eq!(reduce(&f, top).unwrap(), reduce(&shuffled, top).unwrap());
    }

    #[test]
    fn betti_numbers_match_euler_characteristic(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_filtration(&mut rng, 150);
        let top = f.max_dim().unwrap();
        // reduce up to the top dimension so every class is accounted for
        let d = reduce(&f, top).unwrap();
        for c in f.cells() {
            let t = c.value;
            let chi: i64 = (0..=top)
                .map(|k| {
                    let b = d.persistent_betti(k, t, t) as i64;
                    if k % 2 == 0 { b } else { -b }
                })
                .sum();
            prop_assert_eq!(chi, euler(&f, t));
        }
    }

    #[test]
    fn relative_ranks_obey_the_exact_sequence(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let pair = random_pair(&mut rng, 120);
        let k = pair.ambient();
        let a = pair.subfiltration();
        let top = k.max_dim().unwrap();
        let rel = relative_reduce(&pair, top).unwrap();
        let abs_k = reduce(k, top).unwrap();
        let abs_a = if a.is_empty() { PersistenceDiagram::empty() } else { reduce(&a, top).unwrap() };
        let ess = |d: &PersistenceDiagram, dim: usize| d.in_dim(dim).filter(|p| p.is_essential()).count();
        for dim in 0..=top {
            let below = if dim == 0 { 0 } else { ess(&abs_a, dim - 1) };
            prop_assert!(ess(&rel, dim) <= ess(&abs_k, dim) + below);
        }
        prop_assert_eq!(
            alternating_essential(&rel),
            alternating_essential(&abs_k) - alternating_essential(&abs_a)
        );
    }

    #[test]
    fn bottleneck_is_a_metric(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let finite = |d: PersistenceDiagram| {
            PersistenceDiagram::new(d.points().iter().filter(|p| !p.is_essential()).copied().collect()).unwrap()
        };
        let a = finite(random_diagram(&mut rng, 8));
        let b = finite(random_diagram(&mut rng, 8));
        let c = finite(random_diagram(&mut rng, 8));
        let ab = bottleneck_distance(&a, &b);
        prop_assert_eq!(ab, bottleneck_distance(&b, &a));
        prop_assert_eq!(bottleneck_distance(&a, &a), 0.0);
        prop_assert!(ab <= bottleneck_distance(&a, &c) + bottleneck_distance(&c, &b) + 1e-12);
    }

    #[test]
    fn zero_persistence_points_are_invisible(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_diagram(&mut rng, 8);
        let b = random_diagram(&mut rng, 8);
        let mut padded = a.points().to_vec();
        for _ in 0..rng.gen_range(1..5) {
            let t = rng.gen_range(0.0..2.0);
            padded.push(DiagramPoint::new(rng.gen_range(0..2), t, t));
        }
        let padded = PersistenceDiagram::new(padded).unwrap();
        prop_assert_eq!(bottleneck_distance(&a, &b), bottleneck_distance(&padded, &b));
    }

    #[test]
    fn distance_is_max_over_dimensions(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_diagram(&mut rng, 10);
        let b = random_diagram(&mut rng, 10);
        let per_dim = (0..2)
            .map(|k| bottleneck_distance(&a.restrict_dim(k), &b.restrict_dim(k)))
            .fold(0.0, f64::max);
        prop_assert_eq!(bottleneck_distance(&a, &b), per_dim);
    }

    #[test]
    fn r_pipeline_is_invariant_under_isometries(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cloud = random_cloud(&mut rng, 14, 2);
        let x = vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let eps = rng.gen_range(0.1..0.4);
        let query = LocalQuery { basepoint: x.clone(), radius: 1.0, epsilon: eps, max_scale: 2.0 * eps, max_dim: 1 };

        let (s, c) = rng.gen_range(0.0..std::f64::consts::TAU).sin_cos();
        let shift = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
        let motion = |p: &[f64]| vec![c * p[0] - s * p[1] + shift[0], s * p[0] + c * p[1] + shift[1]];
        let moved = cloud.map_points(motion).unwrap();
        let moved_query = LocalQuery { basepoint: motion(&x), ..query.clone() };

        let a = r_pipeline(&cloud, &query).unwrap().diagram;
        let b = r_pipeline(&moved, &moved_query).unwrap().diagram;
        prop_assert!(bottleneck_distance(&a, &b) <= 1e-9);
    }

    #[test]
    fn growing_the_ball_only_moves_points_inside(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cloud = random_cloud(&mut rng, 30, 3);
        let x = vec![0.0; 3];
        let r1 = rng.gen_range(0.05..1.0);
        let r2 = r1 + rng.gen_range(0.0..1.0);
        let q = |r| LocalQuery { basepoint: x.clone(), radius: r, epsilon: 0.1, max_scale: 0.1, max_dim: 1 };
        let small = split_by_ball(&cloud, &q(r1)).unwrap();
        let large = split_by_ball(&cloud, &q(r2)).unwrap();
        prop_assert!(small.inside.iter().all(|i| large.inside.contains(i)));
        prop_assert!(large.outside.iter().all(|i| small.outside.contains(i)));
        prop_assert_eq!(small.inside.len() + small.outside.len(), cloud.len());
    }

    #[test]
    fn restricted_rips_is_rips_of_the_subcloud(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cloud = random_cloud(&mut rng, 10, 2);
        let scale = rng.gen_range(0.1..2.0);
        let keep: Vec<usize> = (0..cloud.len()).filter(|_| rng.gen_bool(0.5)).collect();
        prop_assume!(!keep.is_empty());
        let rips = build_rips(&cloud, scale, 2).unwrap();
        let sub = restrict_to_vertices(&rips, &keep).unwrap().subfiltration();
        let direct = build_rips(&cloud.select(&keep).unwrap(), scale, 2).unwrap();
        let relabel: Vec<(Vec<usize>, f64)> = direct
            .cells()
            .iter()
            .map(|c| (c.simplex.vertices().iter().map(|&v| keep[v]).collect(), c.value))
            .collect();
        let mut ours: Vec<(Vec<usize>, f64)> =
            sub.cells().iter().map(|c| (c.simplex.vertices().to_vec(), c.value)).collect();
        let mut theirs = relabel;
        ours.sort_by(|a, b| a.0.cmp(&b.0));
        theirs.sort_by(|a, b| a.0.cmp(&b.0));
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn enclosing_ball_is_minimal(seed in any::<u64>()) {
        use localhom::complex::meb::min_enclosing_ball;
        let mut rng = rng(seed);
        let cloud = random_cloud(&mut rng, 7, 3);
        let pts: Vec<&[f64]> = cloud.points().iter().map(|p| p.as_slice()).collect();
        let ball = min_enclosing_ball(&pts);
        prop_assert!(pts.iter().all(|p| ball.contains(p)));
        // at least half the diameter, and attained by two or more points
        let diam = (0..pts.len())
            .flat_map(|i| (0..pts.len()).map(move |j| (i, j)))
            .map(|(i, j)| cloud.distance(i, j))
            .fold(0.0, f64::max);
        prop_assert!(ball.radius >= diam / 2.0 - 1e-12);
        let on_boundary = pts
            .iter()
            .filter(|p| (localhom::geometry::euclidean(p, &ball.center) - ball.radius).abs() < 1e-9)
            .count();
        prop_assert!(pts.len() == 1 || on_boundary >= 2);
    }
}
