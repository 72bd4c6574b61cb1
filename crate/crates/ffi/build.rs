use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = crate_dir.join("include").join("coxeter_shadows.h");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        // Header generation must not break `cargo build` for downstream
        // users without cbindgen's toolchain requirements; the header is
        // also checked in.
        Err(err) => println!("cargo:warning=cbindgen failed: {err}"),
    }
}
