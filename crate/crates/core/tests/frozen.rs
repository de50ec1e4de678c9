//! Small end-to-end values through the public API, computed by hand once and
//! kept fixed.

use torsade_core::arthur::{e_psi, e_psi_total, endoscopic_catalog, factor_through, ArthurParameter, Block, ParameterFile};
use torsade_core::denominators::{denom_e_weyl, denom_operator, denom_product};
use torsade_core::exact::{cq, q, qf, Cq};
use torsade_core::langlands::{reduce_to_langlands, verify_theorem, DatumFile, InducedDatum, InducedEntry, Limits, StepKind};
use torsade_core::twisted::TorusPoint;
use torsade_core::HKind;

fn reals(v: &[Cq]) -> Vec<i64> {
    v.iter()
        .map(|z| {
            assert!(z.im == q(0) && z.re.is_integer());
            i64::try_from(z.re.to_integer()).unwrap()
        })
        .collect()
}

#[test]
fn denominators_at_small_points() {
    // (1 - 4), (1 - 16), and (1-4)(1-9)(1-4/9)(1-36)
    let cases = [(2, vec![q(2)], q(-3)), (3, vec![q(2)], q(-15)), (4, vec![q(2), q(3)], qf(-1400, 3))];
    for (n, y, want) in cases {
        let y: Vec<Cq> = y.into_iter().map(cq).collect();
        let want = cq(want);
        assert_eq!(denom_product(n, &y).unwrap(), want, "product N={n}");
        assert_eq!(denom_e_weyl(n, &y).unwrap(), want, "weyl N={n}");
        let t = TorusPoint::theta_fixed(n, &y).unwrap();
        assert_eq!(denom_operator(&t).unwrap(), want, "operator N={n}");
    }
}

#[test]
fn catalog_for_six() {
    let pairs = |k| -> Vec<(usize, usize)> {
        endoscopic_catalog(k, 6).unwrap().iter().map(|d| (d.n_prime, d.n_second)).collect()
    };
    assert_eq!(pairs(HKind::SoOdd), [(0, 6), (2, 4)]);
    assert_eq!(pairs(HKind::SoEven), [(0, 6), (2, 4)]);
    assert!(endoscopic_catalog(HKind::Sp, 6).is_err());
    let sp: Vec<_> = endoscopic_catalog(HKind::Sp, 7).unwrap().iter().map(|d| (d.n_prime, d.n_second)).collect();
    assert_eq!(sp, [(0, 6), (2, 4), (4, 2), (6, 0)]);
}

#[test]
fn mixed_parity_parameter() {
    let psi = ArthurParameter::unipotent(HKind::Sp, &[2, 3]);
    assert_eq!(reals(&e_psi_total(&psi).unwrap().coords), [-2, -1, 0, 1, 2]);
    assert_eq!(reals(&e_psi(&psi).unwrap().coords), [2, 4]);
    let f = factor_through(&psi).unwrap();
    assert_eq!((f.datum.n_prime, f.datum.n_second), (2, 2));
    assert_eq!((f.prime.target, f.second.target), (HKind::SoEven, HKind::Sp));

    let r = verify_theorem(&psi, &Limits::default()).unwrap();
    assert_eq!((r.candidates, r.theta_stable, r.checked.len()), (120, 8, 8));
    assert!(r.passed());
}

#[test]
fn one_swap_reduction() {
    let d = InducedDatum::new(vec![
        InducedEntry::new(q(0), cq(q(-1))),
        InducedEntry::new(qf(1, 2), cq(qf(3, 2))),
        InducedEntry::new(q(0), cq(q(1))),
    ])
    .unwrap();
    let trace = reduce_to_langlands(&d);
    assert_eq!(trace.steps.len(), 1);
    let s = &trace.steps[0];
    assert_eq!((s.position, s.kind, s.borderline), (1, StepKind::Swap, true));
    assert_eq!(reals(&trace.final_datum.exponent().coords), [-2, 2, 3]);
}

#[test]
fn files_round_trip() {
    let psi = ArthurParameter::new(4, HKind::SoEven, vec![Block::new(2, qf(-3, 4), 1), Block::new(-2, qf(3, 4), 1), Block::new(0, q(0), 2)]);
    assert!(psi.is_valid());
    let text = serde_json::to_string(&ParameterFile::from(&psi)).unwrap();
    assert!(text.contains("\"-3/4\""));
    let back: ParameterFile = serde_json::from_str(&text).unwrap();
    assert_eq!(ArthurParameter::from(back), psi);

    let d = InducedDatum::new(vec![InducedEntry::new(qf(1, 2), Cq::new(qf(1, 3), qf(-5, 2)))]).unwrap();
    let text = serde_json::to_string(&DatumFile::from(&d)).unwrap();
    let back: DatumFile = serde_json::from_str(&text).unwrap();
    assert_eq!(InducedDatum::try_from(back).unwrap(), d);
}
