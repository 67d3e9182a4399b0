use cavity_sim::metrics::{
    dice, mann_whitney_one_tailed, mann_whitney_with, median_iqr, sba_consensus, PValueMethod,
    RaterSet,
};
use cavity_sim::volume::{BinaryMask, Grid, Volume};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute-force exact one-tailed p-value: enumerate every way of choosing
/// which pooled observations belong to x, recomputing U by pairwise
/// comparison each time.
pub fn enumerate_p(x: &[f64], y: &[f64]) -> f64 {
    fn u_pairs(x: &[f64], y: &[f64]) -> f64 {
        x.iter()
            .map(|a| {
                y.iter()
                    .map(|b| {
                        if a > b {
                            1.0
                        } else if a == b {
                            0.5
                        } else {
                            0.0
                        }
                    })
                    .sum::<f64>()
            })
            .sum()
    }
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let n = x.len();
    let observed = u_pairs(x, y);
    let (mut hits, mut total) = (0u64, 0u64);
    for bits in 0u32..(1 << pooled.len()) {
        if bits.count_ones() as usize != n {
            continue;
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &v) in pooled.iter().enumerate() {
            if bits >> i & 1 == 1 {
                a.push(v)
            } else {
                b.push(v)
            }
        }
        total += 1;
        if u_pairs(&a, &b) >= observed {
            hits += 1;
        }
    }
    hits as f64 / total as f64
}

#[test]
fn exact_path_matches_enumeration_for_small_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=5 {
        for m in 1..=5 {
            for trial in 0..6 {
                // Alternate continuous data with heavily tied integer data.
                let draw = |rng: &mut ChaCha8Rng| -> f64 {
                    if trial % 2 == 0 {
                        rng.random::<f64>()
                    } else {
                        rng.random_range(0..4) as f64
                    }
                };
                let x: Vec<f64> = (0..n).map(|_| draw(&mut rng)).collect();
                let y: Vec<f64> = (0..m).map(|_| draw(&mut rng)).collect();
                let t = mann_whitney_with(&x, &y, PValueMethod::Exact).unwrap();
                let oracle = enumerate_p(&x, &y);
                assert!(
                    (t.p_value - oracle).abs() < 1e-12,
                    "n={n} m={m} {x:?} {y:?}: {} vs {oracle}",
                    t.p_value
                );
            }
        }
    }
}

#[test]
fn normal_approximation_tracks_exact_at_fifteen() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut worst: f64 = 0.0;
    for shift in [0.0, 0.3, 0.6, 1.0] {
        let x: Vec<f64> = (0..15).map(|_| rng.random::<f64>() + shift).collect();
        let y: Vec<f64> = (0..15).map(|_| rng.random::<f64>()).collect();
        let e = mann_whitney_with(&x, &y, PValueMethod::Exact).unwrap();
        let a = mann_whitney_with(&x, &y, PValueMethod::Normal).unwrap();
        worst = worst.max((e.p_value - a.p_value).abs());
    }
    assert!(worst <= 0.01, "max |p_exact - p_approx| = {worst}");
}

fn mask_from_bits(bits: u32) -> BinaryMask {
    let g = Grid::with_dims([2, 2, 2]).unwrap();
    Volume::new(g, (0..8).map(|i| bits >> i & 1 == 1).collect()).unwrap()
}

#[test]
fn dice_matches_counting_on_all_2x2x2_pairs() {
    for a in 0u32..256 {
        let ma = mask_from_bits(a);
        for b in 0u32..256 {
            let mb = mask_from_bits(b);
            let (na, nb, both) = ((a.count_ones()), b.count_ones(), (a & b).count_ones());
            let expect = if na + nb == 0 {
                1.0
            } else {
                2.0 * both as f64 / (na + nb) as f64
            };
            assert_eq!(dice(&ma, &mb).unwrap(), expect);
        }
    }
}

#[test]
fn concentric_spheres_average_to_middle_radius() {
    let g = Grid::new([41; 3], [1.0; 3], [-20.0; 3]).unwrap();
    let sphere = |r: f64| -> BinaryMask {
        Volume::from_fn(g, |p| {
            let c = g.voxel_to_world(p);
            c.iter().map(|x| x * x).sum::<f64>() <= r * r
        })
    };
    let mut set = RaterSet::new();
    set.push("inner", sphere(8.0)).unwrap();
    set.push("outer", sphere(12.0)).unwrap();
    let consensus = sba_consensus(&set).unwrap();
    let reference = sphere(10.0);
    let (ca, cb) = (consensus.data(), reference.data());
    let mut disagreements = 0;
    for i in 0..g.len() {
        if ca[i] != cb[i] {
            disagreements += 1;
            let r = g
                .voxel_to_world(g.voxel_index(i))
                .iter()
                .map(|x| x * x)
                .sum::<f64>()
                .sqrt();
            assert!((r - 10.0).abs() <= 1.0, "disagreement at radius {r}");
        }
    }
    assert!(hausdorff(&consensus, &reference) <= 1.0 + 1e-9);
    assert!(
        dice(&consensus, &reference).unwrap() > 0.9,
        "{disagreements}"
    );
}

/// Symmetric Hausdorff distance between voxel sets, by brute force over the
/// voxels of each set that the other lacks.
fn hausdorff(a: &BinaryMask, b: &BinaryMask) -> f64 {
    let g = *a.grid();
    let directed = |from: &BinaryMask, to: &BinaryMask| -> f64 {
        let targets: Vec<[f64; 3]> = to.foreground().map(|p| g.voxel_to_world(p)).collect();
        from.foreground()
            .filter(|p| !*to.get(*p))
            .map(|p| {
                let c = g.voxel_to_world(p);
                targets
                    .iter()
                    .map(|t| (0..3).map(|k| (c[k] - t[k]).powi(2)).sum::<f64>())
                    .fold(f64::INFINITY, f64::min)
                    .sqrt()
            })
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

proptest! {
    #[test]
    fn dice_is_symmetric(a in any::<u8>(), b in any::<u8>()) {
        let (ma, mb) = (mask_from_bits(a as u32), mask_from_bits(b as u32));
        prop_assert_eq!(dice(&ma, &mb).unwrap(), dice(&mb, &ma).unwrap());
        if a != 0 {
            prop_assert_eq!(dice(&ma, &ma).unwrap(), 1.0);
        }
    }

    #[test]
    fn u_statistics_sum_to_nm(
        x in prop::collection::vec(-100i32..100, 1..30),
        y in prop::collection::vec(-100i32..100, 1..30),
    ) {
        let x: Vec<f64> = x.into_iter().map(f64::from).collect();
        let y: Vec<f64> = y.into_iter().map(f64::from).collect();
        let t = mann_whitney_one_tailed(&x, &y).unwrap();
        prop_assert_eq!(t.u + t.u_other, (x.len() * y.len()) as f64);
        prop_assert!((0.0..=1.0).contains(&t.p_value));
        prop_assert!(t.u >= 0.0 && t.u <= (x.len() * y.len()) as f64);
    }

    #[test]
    fn p_value_is_rank_invariant(
        x in prop::collection::vec(-50.0f64..50.0, 1..12),
        y in prop::collection::vec(-50.0f64..50.0, 1..12),
    ) {
        let f = |v: &f64| (v / 10.0).exp() * 3.0 + 1.0;
        let a = mann_whitney_one_tailed(&x, &y).unwrap();
        let b = mann_whitney_one_tailed(
            &x.iter().map(f).collect::<Vec<_>>(),
            &y.iter().map(f).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert_eq!(a.u, b.u);
        prop_assert!((a.p_value - b.p_value).abs() < 1e-12);
    }

    #[test]
    fn median_iqr_shift_and_permutation(
        mut v in prop::collection::vec(-1e3f64..1e3, 1..40),
        c in -100.0f64..100.0,
    ) {
        let (m, iqr) = median_iqr(&v).unwrap();
        let shifted: Vec<f64> = v.iter().map(|x| x + c).collect();
        let (ms, iqrs) = median_iqr(&shifted).unwrap();
        prop_assert!((ms - (m + c)).abs() < 1e-9);
        prop_assert!((iqrs - iqr).abs() < 1e-9);
        v.reverse();
        prop_assert_eq!(median_iqr(&v).unwrap(), (m, iqr));
    }

    #[test]
    fn bonferroni_times_m_recovers_alpha(alpha in 1e-4f64..0.5, m in 1usize..500) {
        let t = cavity_sim::metrics::bonferroni(alpha, m).unwrap();
        prop_assert!((t * m as f64 - alpha).abs() <= 2.0 * f64::EPSILON * alpha);
    }
}
