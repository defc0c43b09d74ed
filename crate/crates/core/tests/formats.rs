use qglinf::action::{Deformed, Engine, GeneratorId};
use qglinf::io::{operator_numeric, ModuleFile, OperatorJson};
use qglinf::patterns::{Basis, BasisConfig, Signature};
use qglinf::{parse_rational, Error};

#[test]
fn build_save_reload_keeps_order() {
    let dir = std::env::temp_dir().join(format!("qglinf-formats-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m1.json");
    let basis = Basis::enumerate(&Signature::levendorskii_soibelman(1), 2).unwrap();
    ModuleFile::from_basis(&basis).save(&path).unwrap();
    let back = ModuleFile::load(&path).unwrap().basis(BasisConfig::default()).unwrap();
    assert_eq!(back.hash(), basis.hash());
    assert_eq!(back.patterns(), basis.patterns());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exports_are_stable() {
    let basis = Basis::enumerate(&Signature::levendorskii_soibelman(0), 1).unwrap();
    let render = || {
        let eng = Engine::for_basis(Deformed::new(), &basis);
        let op = eng.operator(GeneratorId::e(0), &basis).unwrap();
        serde_json::to_string(&OperatorJson::from(op.as_ref())).unwrap()
    };
    assert_eq!(render(), render());
}

#[test]
fn numeric_export_rejects_unit_q() {
    let basis = Basis::enumerate(&Signature::levendorskii_soibelman(0), 1).unwrap();
    let eng = Engine::for_basis(Deformed::new(), &basis);
    let op = eng.operator(GeneratorId::f(-1), &basis).unwrap();
    for q in ["1", "-1", "0"] {
        assert!(matches!(operator_numeric(&op, &parse_rational(q).unwrap()), Err(Error::EvaluationDomain(_))));
    }
    let m = operator_numeric(&op, &parse_rational("3/2").unwrap()).unwrap();
    let nonzero: usize = m.rows.iter().flatten().filter(|x| **x != 0.0).count();
    assert_eq!(nonzero, 1);
}
