use std::collections::BTreeSet;

use homvar::dynkin::{DiagramSpec, RootSystem, Weight};
use homvar::field::q;
use homvar::octonion::{Oct, Octonion};
use homvar::parabolic::ParabolicSpec;
use homvar::prolong::{jacobian, monomials, prolongation, prolongation_direct, Poly, PolySystem};
use homvar::reps::{binomial, ext_power, restrict_to_levi, weights_with_mults, weyl_dim, DEFAULT_DIM_GUARD};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn any_spec(max_rank: usize) -> impl Strategy<Value = DiagramSpec> {
    let all = DiagramSpec::all_up_to(max_rank);
    (0..all.len()).prop_map(move |i| all[i])
}

fn small_weight(rank: usize, max: i64) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(0..=max, rank).prop_map(|marks| Weight { marks })
}

fn spec_and_weight(max_rank: usize, max_mark: i64) -> impl Strategy<Value = (DiagramSpec, Weight)> {
    any_spec(max_rank).prop_flat_map(move |s| (Just(s), small_weight(s.rank, max_mark)))
}

/// Random form of a given degree with small integer coefficients on a few monomials.
fn form(nvars: usize, degree: u32) -> impl Strategy<Value = Poly> {
    let mons = monomials(nvars, degree);
    let n = mons.len();
    proptest::collection::vec((0..n, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut p = Poly::zero(nvars, degree);
        for (i, c) in terms {
            p.add_term(mons[i].clone(), q(c));
        }
        p
    })
}

fn system(nvars: usize, degree: u32, max: usize) -> impl Strategy<Value = PolySystem> {
    proptest::collection::vec(form(nvars, degree), 1..=max).prop_map(move |ps| PolySystem::span(nvars, degree, ps))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simple_reflections_permute_other_positive_roots(s in any_spec(8)) {
        let r = RootSystem::of(s);
        for &n in r.nodes() {
            let a = r.simple_root(n);
            for b in r.positive_roots() {
                let img = r.reflect(b, &a);
                if *b == a {
                    prop_assert_eq!(img, a.neg());
                } else {
                    prop_assert!(r.is_positive_root(&img));
                }
            }
        }
    }

    #[test]
    fn pairings_are_bounded_and_highest_root_dominant(s in any_spec(8)) {
        let r = RootSystem::of(s);
        for b in r.positive_roots() {
            for &n in r.nodes() {
                prop_assert!((-3..=3).contains(&r.pairing(b, n)));
            }
        }
        let h = r.root_to_weight(r.highest_root());
        prop_assert!(h.is_dominant());
        prop_assert_eq!(r.num_positive(), r.positive_roots().len());
    }

    #[test]
    fn weight_multiplicities_sum_to_weyl_dimension((s, w) in spec_and_weight(4, 2)) {
        let r = RootSystem::of(s);
        let d = weyl_dim(&r, &w).unwrap();
        prop_assume!(d <= 5000);
        let ws = weights_with_mults(&r, &w, DEFAULT_DIM_GUARD).unwrap();
        prop_assert_eq!(ws.values().map(|&m| m as u128).sum::<u128>(), d);
    }

    #[test]
    fn levi_restriction_preserves_dimension(
        (s, w) in spec_and_weight(5, 1),
        pick in proptest::collection::vec(any::<bool>(), 5),
    ) {
        let r = RootSystem::of(s);
        let d = weyl_dim(&r, &w).unwrap();
        prop_assume!(d <= 3000);
        let mut set: BTreeSet<usize> = r.nodes().iter().copied().filter(|&n| pick[n - 1]).collect();
        if set.is_empty() {
            set.insert(1);
        }
        let dec = restrict_to_levi(&r, &w, &set, DEFAULT_DIM_GUARD).unwrap();
        prop_assert_eq!(dec.total_dim(), d);
    }

    #[test]
    fn exterior_power_has_binomial_dimension((s, w) in spec_and_weight(3, 1), k in 1usize..=3) {
        let r = RootSystem::of(s);
        let d = weyl_dim(&r, &w).unwrap();
        prop_assume!(d <= 40);
        let ws = weights_with_mults(&r, &w, DEFAULT_DIM_GUARD).unwrap();
        let total: i64 = ext_power(&ws, k).values().sum();
        prop_assert_eq!(total as u128, binomial(d, k as u128));
    }

    #[test]
    fn parabolic_spec_round_trips(s in any_spec(8), pick in proptest::collection::vec(any::<bool>(), 8)) {
        let mut set: BTreeSet<usize> = (1..=s.rank).filter(|&n| pick[n - 1]).collect();
        if set.is_empty() {
            set.insert(s.rank);
        }
        let p = ParabolicSpec::new(s, set).unwrap();
        let back: ParabolicSpec = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn prolongation_agrees_with_direct_route(a in system(3, 2, 4)) {
        let p = prolongation(&a, 1, 1_000_000).unwrap();
        let d = prolongation_direct(&a, 1, 1_000_000).unwrap();
        prop_assert_eq!(p, d);
    }

    #[test]
    fn prolongation_is_characterised_by_derivatives(a in system(3, 2, 5), p in form(3, 3)) {
        let a1 = prolongation(&a, 1, 1_000_000).unwrap();
        let in_a1 = a1.contains(&p);
        let derivs_in_a = (0..3).all(|i| a.contains(&p.derivative(i)));
        prop_assert_eq!(in_a1, derivs_in_a);
        if a1.dim() > 0 {
            prop_assert!(jacobian(&a1).unwrap().is_subspace_of(&a));
        }
    }

    #[test]
    fn prolongation_is_monotone(a in system(3, 2, 3), extra in system(3, 2, 3)) {
        let b = PolySystem::span(3, 2, a.basis.iter().chain(&extra.basis).cloned());
        let a1 = prolongation(&a, 1, 1_000_000).unwrap();
        let b1 = prolongation(&b, 1, 1_000_000).unwrap();
        prop_assert!(a1.is_subspace_of(&b1));
    }

    #[test]
    fn second_prolongation_composes(a in system(2, 2, 3)) {
        let a2 = prolongation(&a, 2, 1_000_000).unwrap();
        let a11 = prolongation(&prolongation(&a, 1, 1_000_000).unwrap(), 1, 1_000_000).unwrap();
        prop_assert_eq!(a2.clone(), a11);
        prop_assert_eq!(a2, prolongation_direct(&a, 2, 1_000_000).unwrap());
    }

    #[test]
    fn octonions_are_alternative_and_composition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Octonion::random(&mut rng);
        let y = Octonion::random(&mut rng);
        let z = Octonion::random(&mut rng);
        prop_assert_eq!(x.mul(&x.mul(&y)), x.mul(&x).mul(&y));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
        // Moufang: z(x(zy)) = ((zx)z)y
        prop_assert_eq!(z.mul(&x.mul(&z.mul(&y))), z.mul(&x).mul(&z).mul(&y));
        // flexible: (xy)x = x(yx)
        prop_assert_eq!(x.mul(&y).mul(&x), x.mul(&y.mul(&x)));
        prop_assert_eq!(x.mul(&x.conj()), Oct::scalar(x.norm()));
    }
}

#[test]
fn composition_on_second_fundamental_forms() {
    use homvar::prolong::{chart_dim, ff2_system};
    use homvar::reps::Family;
    let guard = 2_000_000;
    let families = [
        Family::Grassmannian { k: 2, n: 4 },
        Family::Grassmannian { k: 2, n: 5 },
        Family::Grassmannian { k: 2, n: 6 },
        Family::Grassmannian { k: 3, n: 6 },
        Family::Lagrangian { n: 3 },
        Family::Lagrangian { n: 4 },
        Family::Spinor { n: 5 },
        Family::Spinor { n: 6 },
        Family::Quadric { m: 4 },
        Family::Quadric { m: 7 },
    ];
    for f in families {
        assert!(chart_dim(f).unwrap() <= 20);
        let a = ff2_system(f).unwrap();
        let a1 = prolongation(&a, 1, guard).unwrap();
        let a2 = prolongation(&a, 2, guard).unwrap();
        assert_eq!(a2, prolongation(&a1, 1, guard).unwrap(), "{f:?}");
        assert_eq!(a1, prolongation_direct(&a, 1, guard).unwrap(), "{f:?}");
        for p in &a1.basis {
            assert!(jacobian(&PolySystem::span(a.nvars, p.degree, [p.clone()])).unwrap().is_subspace_of(&a));
        }
    }
}

/// Inclusion-minimal B ⊆ 𝒟∖{α} whose removal leaves α at the end of a
/// simply-laced A_k component meeting S only in α.
fn brute_force_removed_sets(ps: &ParabolicSpec, alpha: usize, k: usize) -> BTreeSet<Vec<usize>> {
    let d = ps.diagram();
    let others: Vec<usize> = d.nodes().iter().copied().filter(|&n| n != alpha).collect();
    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let b: BTreeSet<usize> = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &n)| n).collect();
        let rest = d.without(&b);
        let c = rest.component_of(alpha).unwrap();
        if c.len() != k || c.iter().any(|n| *n != alpha && ps.s.contains(n)) {
            continue;
        }
        let comp = rest.induced(&c);
        let is_path = comp.edges().len() + 1 == k
            && comp.edges().iter().all(|e| e.bond == 1)
            && c.iter().all(|&n| comp.degree(n) <= 2)
            && comp.degree(alpha) <= 1;
        if is_path {
            found.push(b);
        }
    }
    found
        .iter()
        .filter(|b| !found.iter().any(|o| o != *b && o.is_subset(b)))
        .map(|b| b.iter().copied().collect())
        .collect()
}

#[test]
fn plane_families_match_subset_search() {
    use homvar::linspaces::planes;
    use homvar::parabolic::is_exposed_short;
    let mut cases = 0;
    for sp in DiagramSpec::all_up_to(7) {
        let r = RootSystem::of(sp);
        let all: BTreeSet<usize> = r.nodes().iter().copied().collect();
        for &a in r.nodes() {
            for s in [BTreeSet::from([a]), all.clone()] {
                if is_exposed_short(&r, &s, a).unwrap() {
                    continue;
                }
                let ps = ParabolicSpec::new(sp, s).unwrap();
                for k in 1..=sp.rank {
                    let got: BTreeSet<Vec<usize>> =
                        planes(&ps, a, k).unwrap().into_iter().map(|f| f.removed_nodes).collect();
                    assert_eq!(got, brute_force_removed_sets(&ps, a, k), "{ps} α{a} k={k}");
                    cases += 1;
                }
            }
        }
    }
    assert!(cases > 500);
}
