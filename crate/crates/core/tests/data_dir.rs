use std::path::Path;

use subnorm::zoo::{load_named, registry, DATA_DIR_VAR};
use subnorm::RunConfig;

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

// One test: the data directory is process-wide state.
#[test]
fn data_directory_override_and_tamper_detection() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let root = Path::new(env!("CARGO_TARGET_TMPDIR")).join("data-dir-test");
    let _ = std::fs::remove_dir_all(&root);
    copy_dir(&shipped, &root);
    std::env::set_var(DATA_DIR_VAR, &root);
    let config = RunConfig::default();
    assert_eq!(load_named("M12", &config).unwrap().order(), 95040);
    assert!(registry().unwrap().iter().any(|e| e.name == "SmallGroup_324_37"));

    let path = root.join("groups/M12.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("[", "[ ", 1)).unwrap();
    assert!(load_named("M12", &config).is_err(), "edited file must fail its hash check");

    std::env::set_var(DATA_DIR_VAR, root.join("missing"));
    assert!(load_named("M12", &config).is_err());
    std::env::remove_var(DATA_DIR_VAR);
}
