use sha2::{Digest, Sha256};
use su11_core::materials::{self, MaterialCatalog, MATERIALS_TOML};
use su11_core::Error;

const MATERIALS_SHA256: &str = "4cedb7d3c716f7a1ff550d044539f19a49087e69b8ae37fa575a8d1ebc3b0a6b";

/// k″(SF57, 0.710 µm) in fs²/mm, frozen from an independent evaluation of
/// the Schott coefficients.
const SF57_GVD_GOLDEN: f64 = 268.354;

#[test]
fn shipped_coefficients_are_frozen() {
    let digest = Sha256::digest(MATERIALS_TOML.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, MATERIALS_SHA256, "materials.toml changed; re-derive the golden values before updating the hash");
}

#[test]
fn sf6_gvd_anchor() {
    let k2 = materials::material("SF6").unwrap().gvd(0.710).unwrap();
    assert!((k2 / 238.0 - 1.0).abs() < 0.02, "k″ = {k2} fs²/mm");
}

#[test]
fn sf57_gvd_golden_value() {
    let k2 = materials::material("SF57").unwrap().gvd(0.710).unwrap();
    assert!((200.0..=400.0).contains(&k2));
    assert!((k2 - SF57_GVD_GOLDEN).abs() < 5e-3, "k″ = {k2} fs²/mm");
}

#[test]
fn sf6_index_near_1_79() {
    let n = materials::material("SF6").unwrap().refractive_index(0.710).unwrap();
    assert!((n - 1.79).abs() < 0.01, "n = {n}");
}

#[test]
fn vacuum_is_dispersionless() {
    let vacuum = materials::material("vacuum").unwrap();
    assert_eq!(vacuum.refractive_index(0.710).unwrap(), 1.0);
    for lam in [0.3, 0.5, 0.71, 1.064, 10.0] {
        assert!(vacuum.gvd(lam).unwrap().abs() < 1e-9);
    }
}

#[test]
fn step_halving_converges() {
    let sf6 = materials::material("SF6").unwrap();
    let a = sf6.gvd_with_step(0.710, 1e-4).unwrap();
    let b = sf6.gvd_with_step(0.710, 5e-5).unwrap();
    assert!(((a - b) / a).abs() < 1e-3);
}

#[test]
fn glasses_show_normal_dispersion() {
    for name in ["SF6", "SF57"] {
        let m = materials::material(name).unwrap();
        let ns: Vec<f64> = (0..=100).map(|i| m.refractive_index(0.5 + 0.005 * i as f64).unwrap()).collect();
        assert!(ns.windows(2).all(|w| w[1] < w[0]), "{name}");
        assert!(m.gvd(0.710).unwrap() > 0.0);
    }
}

#[test]
fn out_of_range_queries_fail() {
    let sf6 = materials::material("SF6").unwrap();
    assert!(matches!(sf6.refractive_index(25.0), Err(Error::OutOfRange { .. })));
    assert!(matches!(sf6.gvd(0.37001), Err(Error::OutOfRange { .. })));
}

#[test]
fn catalog_lists_every_record() {
    let names = MaterialCatalog::builtin().names();
    for expected in ["vacuum", "air", "SF6", "SF57", "BBO"] {
        assert!(names.iter().any(|n| n == expected), "{expected} missing");
    }
}
