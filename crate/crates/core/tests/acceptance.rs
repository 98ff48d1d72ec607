//! Acceptance gate: one PASS/FAIL line per criterion, exact comparisons only.
//! Exits non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use homvar::dynkin::{build_diagram, DiagramSpec, RootSystem, Series, Weight};
use homvar::field::{q, qf, Dual, Q};
use homvar::linspaces::{
    ambient_module, branch, delta0, gamma_set, line_classes, planes, reconstruct_diagram, DEFAULT_EXT_GUARD,
};
use homvar::octonion::verify_suite;
use homvar::parabolic::{grading, is_exposed_short, ParabolicSpec};
use homvar::prolong::{
    cnpk_base_map, det, ff2_system, generic_matrix, minors, param_dimension_probe, prolongation, prolongation_direct,
    secant_membership_check, strict_prolongation_report, BaseParam, PolySystem, DEFAULT_POLY_GUARD,
};
use homvar::reps::{
    binomial, ext_power, normal_table, verify_normal_space, weights_with_mults, weyl_dim, Family, DEFAULT_DIM_GUARD,
};
use homvar::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn spec(s: Series, n: usize) -> DiagramSpec {
    DiagramSpec::new(s, n).unwrap()
}

fn ps(s: &str) -> ParabolicSpec {
    s.parse().unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

// 1. root counts and adjoint dimensions
fn criterion_1() -> Outcome {
    for (s, n, pos, adj) in [
        (Series::G, 2, 6, 14),
        (Series::F, 4, 24, 52),
        (Series::E, 6, 36, 78),
        (Series::E, 7, 63, 133),
        (Series::E, 8, 120, 248),
    ] {
        let r = RootSystem::of(spec(s, n));
        expect(&format!("|Δ+| of {s:?}{n}"), r.num_positive(), pos)?;
        expect(&format!("adjoint dim of {s:?}{n}"), n + 2 * r.num_positive(), adj)?;
    }
    let mut checked = 0;
    for sp in DiagramSpec::all_up_to(12) {
        let n = sp.rank;
        let want = match sp.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            _ => continue,
        };
        expect(&format!("|Δ+| of {sp}"), RootSystem::of(sp).num_positive(), want)?;
        checked += 1;
    }
    Ok(format!("5 exceptional and {checked} classical root systems"))
}

// 2. minuscule table: (H, φ₁) of the degree-one piece
fn criterion_2() -> Outcome {
    // (space, H components, φ₁ marks on the nodes of G)
    let mut rows: Vec<(String, Vec<String>, BTreeMap<usize, i64>)> = Vec::new();
    for n in 1..=8usize {
        for k in 1..=n {
            let mut h = Vec::new();
            if k > 1 {
                h.push(format!("A{}", k - 1));
            }
            if k < n {
                h.push(format!("A{}", n - k));
            }
            let phi = [k.wrapping_sub(1), k + 1].into_iter().filter(|&x| x >= 1 && x <= n).map(|x| (x, 1)).collect();
            rows.push((format!("A{n}/P{k}"), h, phi));
        }
    }
    for n in 3..=8 {
        let h = format!("B{}", n - 1);
        rows.push((format!("B{n}/P1"), vec![h], BTreeMap::from([(2, 1)])));
        rows.push((format!("C{n}/P{n}"), vec![format!("A{}", n - 1)], BTreeMap::from([(n - 1, 2)])));
    }
    for n in 5..=8 {
        rows.push((format!("D{n}/P1"), vec![format!("D{}", n - 1)], BTreeMap::from([(2, 1)])));
    }
    for n in 4..=8 {
        rows.push((format!("D{n}/P{n}"), vec![format!("A{}", n - 1)], BTreeMap::from([(n - 2, 1)])));
    }
    rows.push(("E6/P1".into(), vec!["D5".into()], BTreeMap::from([(3, 1)])));
    rows.push(("E7/P7".into(), vec!["E6".into()], BTreeMap::from([(6, 1)])));
    let mut count = 0;
    for (s, h, phi) in &rows {
        let p = ps(s);
        let g = grading(&p).map_err(|e| format!("{s}: {e}"))?;
        expect(&format!("{s} pieces"), g.pieces.len(), 1)?;
        let levi: Vec<String> = g.levi.iter().map(|c| c.spec.to_string()).collect();
        let mut levi_sorted = levi.clone();
        levi_sorted.sort();
        let mut h_sorted = h.clone();
        h_sorted.sort();
        expect(&format!("{s} H"), levi_sorted, h_sorted)?;
        let marks: BTreeMap<usize, i64> =
            g.pieces[0].h_highest_weight.iter().filter(|(_, &m)| m != 0).map(|(&n, &m)| (n, m)).collect();
        expect(&format!("{s} φ1"), &marks, phi)?;
        count += 1;
    }
    // spinor marking of E6/P1 inside D5, E6 label of E7/P7
    let g = grading(&ps("E6/P1")).unwrap();
    let d5 = &g.levi[0];
    let label = d5.label_of(3).unwrap();
    if label != 4 && label != 5 {
        return Err(format!("E6/P1: marked node has D5 label {label}, not a spin node"));
    }
    Ok(format!("{count} table instances over 7 rows"))
}

// 3. normal spaces
fn criterion_3() -> Outcome {
    let mut n = 0;
    for (s, jmax) in [("A4/P2", 2), ("A5/P3", 3), ("C3/P3", 3), ("D6/P6", 3), ("D3/P1", 2)] {
        for j in 2..=jmax {
            let rep = verify_normal_space(&ps(s), j, DEFAULT_DIM_GUARD).map_err(|e| format!("{s} j={j}: {e}"))?;
            if !rep.ok {
                return Err(format!("{s} j={j}: common {:?} vs expected {}", rep.common, rep.expected_expr));
            }
            n += 1;
        }
    }
    let op2 = normal_table(Family::CayleyPlane);
    let mut dims = vec![1, op2.tangent_dim()];
    dims.extend(op2.normal_dims());
    expect("OP^2 dims", dims, vec![1, 16, 10])?;
    expect("OP^2 total", op2.total_dim(), weyl_dim(&RootSystem::of(spec(Series::E, 6)), &Weight::fundamental(6, 0)).unwrap())?;
    let fr = normal_table(Family::Freudenthal);
    let mut dims = vec![1, fr.tangent_dim()];
    dims.extend(fr.normal_dims());
    expect("G_w(O^3,O^6) dims", dims, vec![1, 27, 27, 1])?;
    expect("G_w(O^3,O^6) total", fr.total_dim(), 56)?;
    Ok(format!("{n} constituent checks; 27 = 1+16+10, 56 = 1+27+27+1"))
}

// 4. strict prolongation
fn criterion_4() -> Outcome {
    for f in [
        Family::Grassmannian { k: 2, n: 5 },
        Family::Grassmannian { k: 3, n: 6 },
        Family::Lagrangian { n: 3 },
        Family::Spinor { n: 6 },
        Family::Quadric { m: 4 },
    ] {
        let t = normal_table(f);
        let rep = strict_prolongation_report(f, t.length + 1, DEFAULT_POLY_GUARD).map_err(|e| e.to_string())?;
        let got: Vec<u128> = rep.rows.iter().map(|r| r.dim as u128).collect();
        let want: Vec<u128> = rep.rows.iter().map(|r| r.expected).collect();
        expect(&format!("{} dim A^(k-2)", rep.family), got, want)?;
    }
    let m = generic_matrix(3, 3);
    let a = PolySystem::span(9, 2, minors(&m, 2));
    expect("dim of 2x2 minors", a.dim(), 9)?;
    let a1 = prolongation(&a, 1, DEFAULT_POLY_GUARD).map_err(|e| e.to_string())?;
    expect("A^(1)", &a1, &PolySystem::span(9, 3, [det(&m)]))?;
    let a1d = prolongation_direct(&a, 1, DEFAULT_POLY_GUARD).map_err(|e| e.to_string())?;
    expect("A^(1) direct route", &a1d, &a1)?;
    let a2 = prolongation(&a1, 1, DEFAULT_POLY_GUARD).map_err(|e| e.to_string())?;
    expect("A^(2)", a2.dim(), 0)?;
    Ok("5 families match dim N_k; minors of 3x3 prolong to <det> then 0".into())
}

// 5. secant membership
fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let seg = ff2_system(Family::Grassmannian { k: 3, n: 6 }).unwrap();
    let r = secant_membership_check(BaseParam::RankOne { p: 3, q: 3 }, 2, &seg, 100, &mut rng, DEFAULT_POLY_GUARD)
        .map_err(|e| e.to_string())?;
    expect("Seg(P2xP2) samples", (r.passed, r.trials), (100, 100))?;
    if r.witness.is_none() {
        return Err("no rank-3 witness for Seg(P2xP2)".into());
    }
    let ver = ff2_system(Family::Lagrangian { n: 3 }).unwrap();
    let r = secant_membership_check(BaseParam::Square { n: 3 }, 2, &ver, 100, &mut rng, DEFAULT_POLY_GUARD)
        .map_err(|e| e.to_string())?;
    expect("v2(P2) samples", (r.passed, r.trials), (100, 100))?;
    if r.witness.is_none() {
        return Err("no rank-3 witness for v2(P2)".into());
    }
    Ok("100/100 and 100/100; rank-3 witnesses violate A^(1)".into())
}

// 6. lines
fn criterion_6() -> Outcome {
    for (s, closed, cdim, gamma) in [("F4/P4", Some("F4/P3"), Some(20), 23), ("G2/P1", Some("G2/P2"), Some(5), 7), ("C2/P1", None, None, 4)] {
        let p = ps(s);
        let f = &line_classes(&p).map_err(|e| e.to_string())?[0];
        if !f.exposed_short {
            return Err(format!("{s}: not exposed short"));
        }
        let r = p.root_system();
        let j = p.single().unwrap();
        let d = delta0(&r, &p.s, j).map_err(|e| e.to_string())?;
        let g = gamma_set(&r, &p.s, &d).map_err(|e| e.to_string())?;
        expect(&format!("{s} |Γ|"), g.len(), gamma)?;
        expect(&format!("{s} open orbit"), f.open_dim, Some(gamma))?;
        if let (Some(c), Some(cd)) = (closed, cdim) {
            expect(&format!("{s} closed orbit"), (f.closed_name.as_str(), f.closed_dim), (c, cd))?;
        }
    }
    expect("dim G(2,4)", ps("A3/P2").root_system().num_positive() - 2, 4)?;
    let mut n = 0;
    for rank in 1..=8 {
        for k in 1..=rank {
            let p = ParabolicSpec::maximal(spec(Series::A, rank), k).unwrap();
            let fs = line_classes(&p).map_err(|e| e.to_string())?;
            expect(&format!("A{rank}/P{k} families"), fs.len(), 1)?;
            expect(&format!("A{rank}/P{k} exposed"), fs[0].exposed_short, false)?;
            let want: BTreeSet<usize> = [k.wrapping_sub(1), k + 1].into_iter().filter(|&x| x >= 1 && x <= rank).collect();
            expect(&format!("A{rank}/P{k} closed orbit"), fs[0].closed_orbit.marked_nodes(), want)?;
            n += 1;
        }
    }
    Ok(format!("F4/P4 (20, 23), G2/P1 (5, 7), C2/P1 4; {n} A_n/P_k cases"))
}

// 7. k-planes
fn criterion_7() -> Outcome {
    let mut gb = 0;
    for sp in DiagramSpec::all_up_to(8) {
        let all: BTreeSet<usize> = (1..=sp.rank).collect();
        let p = ParabolicSpec::new(sp, all.clone()).unwrap();
        for &a in &all {
            let f1 = planes(&p, a, 1).map_err(|e| format!("{sp}/B α{a}: {e}"))?;
            expect(&format!("{sp}/B α{a} F1 families"), f1.len(), 1)?;
            let mut rest = all.clone();
            rest.remove(&a);
            expect(&format!("{sp}/B α{a} F1 parameter"), f1[0].parameter.marked_nodes(), rest)?;
            let f2 = planes(&p, a, 2).map_err(|e| e.to_string())?;
            expect(&format!("{sp}/B α{a} F2"), f2.len(), 0)?;
            gb += 1;
        }
    }
    for n in [6usize, 7] {
        let p = ParabolicSpec::maximal(spec(Series::D, n), n).unwrap();
        for k in 1..n {
            let got: BTreeSet<Vec<usize>> =
                planes(&p, n, k).map_err(|e| e.to_string())?.into_iter().map(|f| f.removed_nodes).collect();
            let want: BTreeSet<Vec<usize>> = match k {
                1 => [vec![n - 2]].into(),
                2 => [vec![n - 3, n - 1]].into(),
                3 => [vec![n - 3], vec![n - 4, n - 1]].into(),
                _ if k + 1 < n => [vec![n - k - 1, n - 1]].into(),
                _ => [vec![n - 1]].into(),
            };
            expect(&format!("D{n}/P{n} P^{k} families"), got, want)?;
        }
        expect(&format!("D{n}/P{n} P^{n}"), planes(&p, n, n).map(|v| v.len()).unwrap_or(0), 0)?;
    }
    let p = ps("E6/P1");
    let names = |k| -> Result<Vec<String>, String> {
        Ok(planes(&p, 1, k).map_err(|e| e.to_string())?.into_iter().map(|f| f.parameter_name).collect())
    };
    expect("E6/P1 P^5 parameter", names(5)?, vec!["E6/P2".to_string()])?;
    expect("E6/P1 P^4 parameters", names(4)?, vec!["E6/P5".to_string(), "E6/P{2,6}".to_string()])?;
    Ok(format!("{gb} G/B classes; D6, D7 lists; E6/P1 P^5 by E6/P2, P^4 by E6/P5"))
}

// 8. reconstruction
fn criterion_8() -> Outcome {
    let mut n = 0;
    let mut skipped = 0;
    for sp in DiagramSpec::all_up_to(8) {
        let r = RootSystem::of(sp);
        let d = build_diagram(sp);
        for &i in r.nodes() {
            if is_exposed_short(&r, &set(&[i]), i).unwrap() {
                skipped += 1;
                continue;
            }
            let t = reconstruct_diagram(sp, i).map_err(|e| format!("{sp}/P{i}: {e}"))?;
            // the isomorphism must carry every edge, bond and arrow
            let m = &t.isomorphism;
            expect(&format!("{sp}/P{i} start"), m.get(&1).copied(), Some(i))?;
            expect(&format!("{sp}/P{i} rank"), t.result.rank(), d.rank())?;
            for e in t.result.edges() {
                let img = d.edge(m[&e.a], m[&e.b]).ok_or(format!("{sp}/P{i}: edge {}-{} not mapped", e.a, e.b))?;
                expect(&format!("{sp}/P{i} bond"), img.bond, e.bond)?;
                expect(&format!("{sp}/P{i} arrow"), img.arrow_to, e.arrow_to.map(|x| m[&x]))?;
            }
            expect(&format!("{sp}/P{i} edges"), t.result.edges().len(), d.edges().len())?;
            n += 1;
        }
    }
    let e6 = reconstruct_diagram(spec(Series::E, 6), 1).unwrap().chain();
    expect("E6/P1 chain", &e6[1..5], &["S_5", "G(2,5)", "Seg(P^1 × P^2)", "P^0 ⊔ P^1"].map(String::from))?;
    let e7 = reconstruct_diagram(spec(Series::E, 7), 1).unwrap().chain();
    expect("E7/P1 chain", &e7[1..5], &["S_6", "G(2,6)", "Seg(P^1 × P^3)", "P^0 ⊔ P^2"].map(String::from))?;
    Ok(format!(
        "{n} round trips ({skipped} exposed short skipped); E6: S_5 → G(2,5) → Seg(P^1×P^2) → P^0⊔P^1, \
         the Seg(P^1×P^3) → P^0⊔P^2 tail occurs for E7"
    ))
}

// 9. octonions
fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let rep = verify_suite(&mut rng, 500, 20);
    for c in &rep.checks {
        if !c.ok() {
            return Err(format!("{}: {}/{}", c.name, c.passed, c.total));
        }
    }
    expect("tangent kernels", rep.tangent_dims, (16, 9))?;
    expect("G2/P1 tangent", rep.g2_tangent_dim, 6)?;
    expect("L_v kernel", rep.left_kernel_dim, 4)?;
    let probe = |n: &str| rep.probes.iter().find(|(m, _)| m == n).map(|(_, p)| p.clone()).unwrap();
    expect("F4/P4 base locus projective dim", probe("F4/P4").projective_dim, 9)?;
    expect("F4/P3 base locus projective dim", probe("F4/P3").projective_dim, 5)?;
    let p1: Vec<Q> = vec![q(3), qf(-2, 5), q(7), qf(1, 3)];
    let p2: Vec<Q> = vec![qf(5, 2), q(-4), qf(2, 7), q(6)];
    let c = param_dimension_probe(|x: &[Dual<Q>]| cnpk_base_map(2, x), &p1, &p2);
    expect("C3/P2 base locus differential rank", c.rank, 4)?;
    Ok("identities on 500 samples; (16, 9, 6), L_v 4; probes 9, 5 and rank 4".into())
}

// 10. representation dimensions
fn criterion_10() -> Outcome {
    let e6 = RootSystem::of(spec(Series::E, 6));
    let e7 = RootSystem::of(spec(Series::E, 7));
    expect("E6 w1", weyl_dim(&e6, &Weight::fundamental(6, 0)).unwrap(), 27)?;
    expect("E7 w7", weyl_dim(&e7, &Weight::fundamental(7, 6)).unwrap(), 56)?;
    let adj = weyl_dim(&e6, &Weight::fundamental(6, 1)).unwrap();
    expect("E6 adjoint", adj, 78)?;
    expect("dim Λ²e6 − 78", binomial(adj, 2) - adj, weyl_dim(&e6, &Weight::fundamental(6, 3)).unwrap())?;
    expect("dim V(w4) of E6", weyl_dim(&e6, &Weight::fundamental(6, 3)).unwrap(), 2925)?;
    let mut checked = 0;
    for sp in DiagramSpec::all_up_to(6) {
        let r = RootSystem::of(sp);
        let d = r.diagram().clone();
        for &end in r.nodes() {
            if d.degree(end) > 1 {
                continue;
            }
            let lambda = Weight::fundamental(sp.rank, r.pos(end));
            let dim = weyl_dim(&r, &lambda).unwrap();
            let ws = weights_with_mults(&r, &lambda, DEFAULT_DIM_GUARD).map_err(|e| e.to_string())?;
            for k in 1..=branch(&d, end).len() {
                if binomial(dim, k as u128) > DEFAULT_EXT_GUARD as u128 {
                    break;
                }
                let m = match ambient_module(sp, end, k, DEFAULT_EXT_GUARD) {
                    Ok(m) => m,
                    Err(Error::Guard { .. }) => break,
                    Err(e) => return Err(format!("{sp} end {end} k={k}: {e}")),
                };
                let ext = ext_power(&ws, k);
                expect(&format!("{sp} end {end} k={k} mult of {}", m.weight), ext.get(&m.weight).copied(), Some(1))?;
                checked += 1;
            }
        }
    }
    Ok(format!("27, 56, 2925; {checked} extremal weights of multiplicity 1"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("root-system counts and adjoint dimensions", criterion_1),
        ("minuscule table from the grading", criterion_2),
        ("normal-space verification", criterion_3),
        ("strict prolongation", criterion_4),
        ("secant membership", criterion_5),
        ("lines", criterion_6),
        ("k-planes", criterion_7),
        ("diagram reconstruction", criterion_8),
        ("octonion suite", criterion_9),
        ("representation dimensions", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed in {:.1}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
