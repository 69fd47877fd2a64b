//! Trace ideals of the surface families as computed from Hom(M, R), where
//! they differ from the catalog's stated ideals. z always lies on the
//! diagonal of z id + phi, so it is in every trace ideal of a z-form module.

use traceideal::catalog::{family, FamilyInstance, Params};
use traceideal::trace::{intersect_all, trace_ideal_oracle};
use traceideal::Ideal;

fn instance(name: &str, n: Option<i64>) -> FamilyInstance {
    let params = n.map_or_else(Params::none, |n| Params::single("n", n));
    family(name).unwrap().instantiate(&params, None).unwrap()
}

fn oracle_mcm(inst: &FamilyInstance) -> Ideal {
    let traces = inst
        .modules
        .iter()
        .map(|m| trace_ideal_oracle(&m.module.presentation(&inst.ctx).unwrap()));
    let traces: Vec<Ideal> = traces.map(Result::unwrap).filter(|t| !t.is_unit()).collect();
    intersect_all(traces.into_iter().map(Ok), &inst.ctx).unwrap()
}

#[test]
fn an_surfaces_contain_z() {
    for n in 1..=6 {
        let inst = instance("An-dim2", Some(n));
        for m in &inst.modules {
            let j: i64 = m.name[1..].parse().unwrap();
            let tau = trace_ideal_oracle(&m.module.presentation(&inst.ctx).unwrap()).unwrap();
            let k = j.min(n + 1 - j);
            let expected = if k == 0 {
                "(1)".to_string()
            } else {
                format!("(x, y^{k}, z)").replace("y^1,", "y,")
            };
            assert_eq!(tau.to_string(), expected, "n={n} {}", m.name);
        }
        let half = (n + 1) / 2;
        let expected = inst.ctx.ideal(&format!("(x, y^{half}, z)")).unwrap();
        assert_eq!(oracle_mcm(&inst), expected, "n={n}");
        assert_eq!(inst.mcm_test_ideal().unwrap(), expected, "n={n}");
    }
}

#[test]
fn x9_mcm_contains_xy() {
    let inst = instance("X9-dim2", None);
    let expected = inst.ctx.ideal("(x^2, x*y, z)").unwrap();
    assert_eq!(oracle_mcm(&inst), expected);
    assert_eq!(inst.mcm_test_ideal().unwrap(), expected);
    assert!(!inst
        .ctx
        .ideal("(x^2, z)")
        .unwrap()
        .contains(&inst.ctx.poly("x*y").unwrap())
        .unwrap());
}

#[test]
fn dn_mcm_contains_xy() {
    for n in 4..=8 {
        let inst = instance("Dn-dim2", Some(n));
        let expected = inst.ctx.ideal(&format!("(x^2, x*y, y^{}, z)", n / 2)).unwrap();
        assert_eq!(oracle_mcm(&inst), expected, "n={n}");
        assert_eq!(inst.mcm_test_ideal().unwrap(), expected, "n={n}");
    }
}
