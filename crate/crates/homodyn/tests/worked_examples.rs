mod common;

use common::*;
use homodyn::decomposer::{case1_structure, case2_structure, Branch, Case2Sub, CaseTag, Count, MeasureTag};
use homodyn::measure::{mu_hat, ComponentMeasure};
use homodyn::projective::{Disk, QPoint};
use homodyn::quad_ext::Embedding;
use homodyn::quad_field::QuadRational;
use homodyn::rational::{pow_p_rat, rat, Rational};
use homodyn::verifier::verify_structure;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn q5(a: Rational, b: Rational) -> QuadRational {
    QuadRational::new(BigInt::from(5), a, b)
}

#[test]
fn example_one_classification() {
    let a = an(0, 1, 1, 1, 3);
    match &a.case {
        CaseTag::CaseIII { unramified, branch, finite_order, .. } => {
            assert!(*unramified);
            assert_eq!(*branch, Branch::UnramifiedOdd);
            assert_eq!(*finite_order, None);
        }
        other => panic!("{other:?}"),
    }
    let r = a.report();
    assert_eq!(r.lambda_profile.ell, Some(4));
    assert_eq!(r.lambda_profile.valuations.get("v_pi(lambda^4-1)"), Some(&1));
    assert_eq!(r.count, Count::Finite(1));
    assert!(r.minimal);
    let o = r.odometer.unwrap();
    assert_eq!((o.base, o.ratio), (4, 3));
    assert_eq!(o.text(), "(4,12,36,…)");
    assert_eq!(r.measure_tag, Some(MeasureTag::MuHat));
}

#[test]
fn example_one_lambda_powers() {
    let a = an(0, 1, 1, 1, 3);
    let l = a.lambda_quad.clone().unwrap();
    assert_eq!(l, q5(rat(-3, 2), rat(-1, 2)));
    assert_eq!(l.pow(2), q5(rat(7, 2), rat(3, 2)));
    assert_eq!(l.pow(4), q5(rat(47, 2), rat(21, 2)));
}

#[test]
fn example_one_level_one_atlas() {
    let a = an(0, 1, 1, 1, 3);
    let comps = atlas_disks(&a, 1);
    assert_eq!(comps.len(), 1);
    let want = [
        Disk::ball(3, rat(0, 1), -1),
        Disk::ball(3, rat(1, 1), -1),
        Disk::ball(3, rat(2, 1), -1),
        Disk::complement(3, rat(0, 1), 0),
    ];
    assert_eq!(comps[0].len(), 4);
    for w in &want {
        assert!(comps[0].iter().any(|c| c.subset_of(w) && w.subset_of(c)), "{w}");
    }
    let lc = a.level_cycles(1).unwrap();
    assert_eq!(lc.cycles.len(), 1);
    assert_eq!(lc.cycles[0].len(), 4);
}

#[test]
fn example_one_sigma_is_mu_hat() {
    let a = an(0, 1, 1, 1, 3);
    let cm = ComponentMeasure::from_analysis(&a, 2, 0).unwrap();
    assert_eq!(cm.total, Rational::one());
    assert_eq!(cm.sigma(&Disk::ball(3, rat(0, 1), 0)).unwrap(), rat(3, 4));
    assert_eq!(cm.sigma(&Disk::complement(3, rat(0, 1), 0)).unwrap(), rat(1, 4));
}

/// μ̂ is the pull-back of the weight (p+1)⁻¹p^{-n+1} on the level-n disks of
/// g(P¹(Q_3)), g(x) = (x − x₂)/(x − x₁).
#[test]
fn example_one_push_forward() {
    let p = 3u64;
    let a = an(0, 1, 1, 1, p);
    let emb = Embedding::new(&BigInt::from(5), p, 64).unwrap();
    let x1 = q5(rat(-1, 2), rat(1, 2));
    let x2 = q5(rat(-1, 2), rat(-1, 2));
    let g = |x: &QPoint| -> QuadRational {
        match x {
            QPoint::Infinity => QuadRational::rational(&BigInt::from(5), Rational::one()),
            QPoint::Finite(r) => {
                let xr = QuadRational::rational(&BigInt::from(5), r.clone());
                xr.sub(&x2).div(&xr.sub(&x1)).unwrap()
            }
        }
    };
    let close = |u: &QuadRational, v: &QuadRational, n: i64| -> bool {
        match emb.embed(&u.sub(v)).unwrap().twice_val().unwrap() {
            None => true,
            Some(tv) => tv >= 2 * n,
        }
    };
    for n in 1..=4u32 {
        let scheme = a.scheme(n).unwrap();
        let weight = pow_p_rat(p, 1 - n as i64) / Rational::from_integer((p + 1).into());
        let images: Vec<[QuadRational; 2]> = (0..scheme.count())
            .map(|i| {
                let [r, s] = scheme.representatives(i);
                [g(&r), g(&s)]
            })
            .collect();
        let mut total = Rational::zero();
        for (i, im) in images.iter().enumerate() {
            assert!(close(&im[0], &im[1], n as i64), "cell {i} is not inside one disk at level {n}");
            for other in &images[..i] {
                assert!(!close(&im[0], &other[0], n as i64), "two cells share a disk at level {n}");
            }
            let m = mu_hat(&scheme.disk(i as u64));
            assert_eq!(m, weight, "level {n} cell {i}");
            total += m;
        }
        assert_eq!(total, Rational::one());
    }
}

#[test]
fn example_two_classification() {
    let a = an(0, 1, 1, 1, 2);
    match &a.case {
        CaseTag::CaseIII { class, unramified, branch, .. } => {
            assert_eq!(class, "-3");
            assert!(*unramified);
            assert_eq!(*branch, Branch::TwoUnramified);
        }
        other => panic!("{other:?}"),
    }
    let r = a.report();
    assert_eq!(r.lambda_profile.ell, Some(3));
    assert_eq!(r.lambda_profile.valuations.get("v_pi(lambda^6-1)"), Some(&3));
    assert_eq!(r.count, Count::Finite(2));
    assert!(!r.minimal);
    let o = r.odometer.unwrap();
    assert_eq!(o.text(), "(3,6,12,…)");
    let l = a.lambda_quad.clone().unwrap();
    assert_eq!(l.pow(3), q5(rat(-9, 1), rat(-4, 1)));
    assert_eq!(l.pow(6), q5(rat(161, 1), rat(72, 1)));
}

#[test]
fn example_two_printed_lists() {
    let a = an(0, 1, 1, 1, 2);
    let comps = atlas_disks(&a, 3);
    assert_eq!(comps.len(), 2);
    let (verdicts, first) = compare_printed(&comps);
    assert!(first.is_some());
    let flagged: Vec<(&str, Verdict)> =
        verdicts.iter().filter(|(_, v)| *v != Verdict::Exact).map(|(e, v)| (e.text, v.clone())).collect();
    assert_eq!(
        flagged,
        vec![
            ("D̄(1/2,1)", Verdict::Straddles),
            ("D̄(1/11,1/8)", Verdict::Duplicate),
            ("D̄(18/11,1)", Verdict::Straddles),
        ]
    );
    for need in ["D̄(0,1/8)", "D̄(1,1/8)", "D̄(2,1/8)", "D̄(1/3,1/8)"] {
        assert!(verdicts.iter().any(|(e, v)| e.text == need && *v == Verdict::Exact), "{need}");
    }
}

/// Read as orbit points 0, 1, 1/2, 2/3, 3/5 and 2, 1/3, 3/4, 4/7, 7/11, 11/18,
/// with cell radii, the lists match the computed atlas exactly.
#[test]
fn example_two_orbit_reading() {
    let a = an(0, 1, 1, 1, 2);
    let comps = atlas_disks(&a, 3);
    let first = comps.iter().position(|c| c.iter().any(|d| d.contains(&QPoint::int(0)))).unwrap();
    let b1 = [(rat(0, 1), -3), (rat(1, 1), -3), (rat(1, 2), -1), (rat(2, 3), -3), (rat(3, 5), -3)];
    let b2 = [(rat(2, 1), -3), (rat(1, 3), -3), (rat(3, 4), 1), (rat(4, 7), -3), (rat(7, 11), -3), (rat(11, 18), -1)];
    let same = |x: &Disk, y: &Disk| x.subset_of(y) && y.subset_of(x);
    let mut want1: Vec<Disk> = b1.iter().map(|(c, k)| Disk::ball(2, c.clone(), *k)).collect();
    want1.push(Disk::complement(2, rat(3, 5), 2));
    let want2: Vec<Disk> = b2.iter().map(|(c, k)| Disk::ball(2, c.clone(), *k)).collect();
    for (want, comp) in [(&want1, &comps[first]), (&want2, &comps[1 - first])] {
        assert_eq!(want.len(), comp.len());
        for w in want {
            assert!(comp.iter().any(|c| same(c, w)), "{w}");
        }
    }
    // Consecutive orbit points of 0 and of 2.
    let mut x = QPoint::int(0);
    for (c, _) in &b1 {
        assert_eq!(x, QPoint::Finite(c.clone()));
        x = a.map.apply_exact(&x);
    }
    let mut x = QPoint::int(2);
    for (c, _) in &b2 {
        assert_eq!(x, QPoint::Finite(c.clone()));
        x = a.map.apply_exact(&x);
    }
}

#[test]
fn example_two_membership() {
    let a = an(0, 1, 1, 1, 2);
    let s = |x: i64, y: i64| a.same_component(&QPoint::int(x), &QPoint::int(y), 3).unwrap();
    assert!(s(0, 1).same && s(0, 1).certified);
    assert!(!s(0, 2).same);
    assert!(s(5, 5).same);
    let inf = a.same_component(&QPoint::Infinity, &QPoint::int(0), 3).unwrap();
    assert!(inf.same);
}

#[test]
fn example_two_sigma() {
    let a = an(0, 1, 1, 1, 2);
    let comps = atlas_disks(&a, 3);
    let first = comps.iter().position(|c| c.iter().any(|d| d.contains(&QPoint::int(0)))).unwrap();
    let cm = ComponentMeasure::from_analysis(&a, 3, first).unwrap();
    let d = Disk::ball(2, rat(0, 1), -3);
    let mass: Rational = comps[first].iter().map(mu_hat).fold(Rational::zero(), |x, y| x + y);
    assert_eq!(cm.sigma(&d).unwrap(), mu_hat(&d) / &mass);
    assert_eq!(mass, rat(1, 2));
    assert!(cm.sigma(&Disk::ball(2, rat(2, 1), -3)).is_err());
}

#[test]
fn case_one_sphere_counts() {
    let a = an(3, -1, 1, 1, 3);
    assert_eq!(a.case, CaseTag::CaseI);
    let r = case1_structure(&a, 3).unwrap();
    assert_eq!(r.x0, "1");
    assert_eq!(r.v_alpha, 0);
    let c = Disk::from_json(&r.complement_component, 3).unwrap();
    let want = Disk::complement(3, rat(1, 1), -1);
    assert!(c.subset_of(&want) && want.subset_of(&c));
    for (i, s) in r.spheres.iter().enumerate() {
        let m = -(i as i64) - 1;
        assert_eq!(s.m, m);
        assert_eq!(s.count, 2 * 3u64.pow((-m - 1) as u32));
        assert_eq!(s.radius_exp, 2 * m);
    }
    for c in verify_structure(&a, 5).unwrap() {
        assert_eq!(c.predicted, c.observed, "{:?}", c.region);
    }
}

#[test]
fn case_two_generic() {
    let a = an(2, 0, 1, 1, 3);
    let r = case2_structure(&a).unwrap();
    assert_eq!(r.sub, Case2Sub::Generic);
    assert_eq!((r.v0, r.delta, r.per_sphere), (Some(1), Some(2), Some(1)));
    for c in verify_structure(&a, 5).unwrap() {
        assert_eq!(c.predicted, c.observed, "{:?}", c.region);
    }
}

#[test]
fn case_two_attracting_and_periodic() {
    let r = case2_structure(&an(2, 0, 1, 1, 2)).unwrap();
    assert!(matches!(r.sub, Case2Sub::AttractX1 | Case2Sub::AttractX2));
    let inv = an(1, 3, 1, -1, 5);
    let r = case2_structure(&inv).unwrap();
    assert_eq!(r.sub, Case2Sub::FiniteOrder { order: 2 });
    let sq = inv.map.compose(&inv.map).unwrap();
    assert!(sq.is_identity());
}

#[test]
fn ramified_greater_count_two() {
    let a = an(3, 5, 1, 4, 3);
    match &a.case {
        CaseTag::CaseIII { branch, unramified, .. } => {
            assert_eq!(*branch, Branch::RamifiedOddGreater);
            assert!(!unramified);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(a.count(), Count::Finite(2));
    assert_eq!(a.odometer().unwrap().text(), "(1,3,9,…)");
    let s = a.stabilization_level().unwrap();
    let bf = homodyn::verifier::brute_force_for(&a, s).unwrap();
    assert_eq!(bf.cycles.len(), 2);
}
