//! Instance generation, Matrix Market round-trips, and manifests.
//!
//! Specs are small JSON values; equal specs generate bit-identical
//! matrices. Matrices travel as Matrix Market coordinate files written with
//! 17 significant digits, which round-trips every finite f64 exactly, and a
//! JSON manifest binds the J/A/V roles together for the CLI and for
//! load_pair.

use krein::instances::{generate, InstanceSpec};
use krein::mm::{read_matrix, write_matrix};
use krein::report::{load_pair, Manifest};
use krein::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();
    let dir = tempfile::tempdir()?;

    let spec = InstanceSpec::block_diagonal(3, 5, 0.5, 0.4, 0.3, 0.2);
    println!("spec: {}", serde_json::to_string(&spec)?);
    let inst = generate(&spec, &tols)?;
    let again = generate(&spec, &tols)?;
    assert_eq!(inst.operator.matrix(), again.operator.matrix());
    println!("determinism: regenerating the spec reproduces A exactly");

    let j_path = dir.path().join("j.mtx");
    let a_path = dir.path().join("a.mtx");
    let v_path = dir.path().join("v.mtx");
    write_matrix(&j_path, inst.operator.symmetry().matrix())?;
    write_matrix(&a_path, inst.operator.matrix())?;
    write_matrix(&v_path, inst.perturbation.as_ref().expect("has V"))?;

    let back = read_matrix(&a_path)?;
    assert_eq!(&back, inst.operator.matrix());
    println!("matrix market: A -> {} -> A is exact", a_path.file_name().unwrap().to_string_lossy());

    let manifest = Manifest {
        j: "j.mtx".into(),
        a: "a.mtx".into(),
        v: Some("v.mtx".into()),
        tolerances: None,
        output_dir: None,
        instance: Some(spec),
    };
    let manifest_path = dir.path().join("manifest.json");
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;

    let loaded = load_pair(&manifest_path).map_err(std::io::Error::other)?;
    println!(
        "loaded manifest: dim {}, certified {}, V present: {}",
        loaded.operator.dim(),
        loaded.operator.is_certified(),
        loaded.perturbation.is_some()
    );
    for digest in &loaded.inputs {
        println!("  {} {} sha256 {}...", digest.role, digest.path, &digest.sha256[..12]);
    }
    Ok(())
}
