use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use trapcc_ffi::*;

fn last_error() -> Option<String> {
    let p = trapcc_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(trapcc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn solve_masses_matches_the_library() {
    let mut out = TrapccMasses::default();
    let status = unsafe { trapcc_solve_masses(0.5, 1.0, &mut out) };
    assert_eq!(status, TrapccStatus::Ok);
    assert!(last_error().is_none());
    let sol = trapcc::mass_solver::solve_masses(&trapcc::TrapezoidParams::new(0.5, 1.0).unwrap()).unwrap();
    assert_eq!(out.top_mass, sol.top_mass);
    assert_eq!(out.base_mass, sol.base_mass);
    assert_eq!(out.label, TrapccLabel::BothPositive as i32);
    assert!((out.top_pair_defect + 1.859_261_743_802_94).abs() < 1e-12);

    let (mut m, mut big_m) = (0.0, 0.0);
    assert_eq!(
        unsafe { trapcc_solve_masses_linear(0.5, 1.0, &mut m, &mut big_m) },
        TrapccStatus::Ok
    );
    assert!((m - out.top_mass).abs() < 1e-12 && (big_m - out.base_mass).abs() < 1e-12);
}

#[test]
fn invalid_arguments_and_null_pointers_set_the_error_message() {
    let mut out = TrapccMasses::default();
    assert_eq!(
        unsafe { trapcc_solve_masses(-1.0, 1.0, &mut out) },
        TrapccStatus::InvalidArgument
    );
    assert!(last_error().unwrap().contains("alpha"));

    assert_eq!(
        unsafe { trapcc_solve_masses(0.5, 1.0, ptr::null_mut()) },
        TrapccStatus::NullPointer
    );
    assert_eq!(
        unsafe { trapcc_solve_masses_linear(0.5, 1.0, ptr::null_mut(), ptr::null_mut()) },
        TrapccStatus::NullPointer
    );

    let mut label = TrapccLabel::Degenerate;
    assert_eq!(unsafe { trapcc_classify(0.5, 0.5, &mut label) }, TrapccStatus::Ok);
    assert_eq!(label, TrapccLabel::OnlyTopPositive);
    assert!(last_error().is_none());
}

#[test]
fn residual_over_raw_arrays() {
    let m = 0.369_398_062_518_129_3;
    let masses = [m; 4];
    let xy = [-0.5, -0.5, 0.5, -0.5, 0.5, 0.5, -0.5, 0.5];
    let mut report = TrapccResidual::default();
    let status = unsafe { trapcc_cc_residual(4, masses.as_ptr(), xy.as_ptr(), 1.0, &mut report) };
    assert_eq!(status, TrapccStatus::Ok);
    assert!(report.max_residual < 1e-12);

    let mut central = 0;
    let status = unsafe { trapcc_is_central(4, masses.as_ptr(), xy.as_ptr(), 1e-10, &mut central, ptr::null_mut()) };
    assert_eq!(status, TrapccStatus::Ok);
    assert_eq!(central, 1);

    let status = unsafe { trapcc_cc_residual(4, ptr::null(), xy.as_ptr(), 1.0, &mut report) };
    assert_eq!(status, TrapccStatus::NullPointer);
    let coincident = [0.0; 8];
    let status = unsafe { trapcc_cc_residual(4, masses.as_ptr(), coincident.as_ptr(), 1.0, &mut report) };
    assert_eq!(status, TrapccStatus::InvalidArgument);
}

#[test]
fn exact_boundary_and_approximate_formula() {
    let mut out = TrapccBoundary::default();
    let status =
        unsafe { trapcc_exact_boundary(TrapccBoundaryFunction::F1, TrapccAxis::Alpha, 0.5, 0.5, 1.0, &mut out) };
    assert_eq!(status, TrapccStatus::Ok);
    assert_eq!(out.found, 1);
    assert!((0.86..=0.88).contains(&out.root));
    assert!(out.f_value.abs() <= 1e-10);

    let status =
        unsafe { trapcc_exact_boundary(TrapccBoundaryFunction::F1, TrapccAxis::Alpha, 0.5, 0.1, 0.5, &mut out) };
    assert_eq!(status, TrapccStatus::Ok);
    assert_eq!(out.found, 0);
    assert!(out.lo_value > 0.0 && out.hi_value > 0.0);

    let mut alpha = 0.0;
    let status = unsafe { trapcc_published_boundary(TrapccBoundaryFunction::F1, 0.5, &mut alpha) };
    assert_eq!(status, TrapccStatus::DomainError);
    assert!(last_error().unwrap().contains("radicand"));
}

#[test]
fn raster_handle_round_trip() {
    let mut handle: *mut TrapccRaster = ptr::null_mut();
    let status = unsafe { trapcc_raster_new(0.0, 1.0, 8, 0.0, 1.0, 6, &mut handle) };
    assert_eq!(status, TrapccStatus::Ok);
    assert!(!handle.is_null());

    let (mut na, mut nb) = (0, 0);
    assert_eq!(
        unsafe { trapcc_raster_dims(handle, &mut na, &mut nb) },
        TrapccStatus::Ok
    );
    assert_eq!((na, nb), (8, 6));

    let mut cell = TrapccCell::default();
    assert_eq!(unsafe { trapcc_raster_cell(handle, 7, 5, &mut cell) }, TrapccStatus::Ok);
    assert_eq!((cell.alpha, cell.beta), (0.9375, 11.0 / 12.0));
    assert_eq!(
        unsafe { trapcc_raster_cell(handle, 8, 0, &mut cell) },
        TrapccStatus::OutOfRange
    );

    unsafe { trapcc_raster_free(handle) };
    unsafe { trapcc_raster_free(ptr::null_mut()) };

    assert_eq!(
        unsafe { trapcc_raster_new(0.0, 1.0, 0, 0.0, 1.0, 6, &mut handle) },
        TrapccStatus::InvalidArgument
    );
}

#[test]
fn square_trajectory_is_rigid() {
    let mut handle: *mut TrapccTrajectory = ptr::null_mut();
    let status = unsafe { trapcc_simulate(1.0, 1.0, 1.0, 1e-2, 10, 0, &mut handle) };
    assert_eq!(status, TrapccStatus::Ok);
    let len = unsafe { trapcc_trajectory_len(handle) };
    assert!(len > 2);
    assert_eq!(unsafe { trapcc_trajectory_bodies(handle) }, 4);

    let mut xy = [0.0; 8];
    let mut t = -1.0;
    let status = unsafe {
        trapcc_trajectory_sample(
            handle,
            0,
            &mut t,
            xy.as_mut_ptr(),
            xy.len(),
            ptr::null_mut(),
            ptr::null_mut(),
        )
    };
    assert_eq!(status, TrapccStatus::Ok);
    assert_eq!(t, 0.0);
    let (state, _) =
        trapcc::dynamics::init_relative_equilibrium(&trapcc::TrapezoidParams::new(1.0, 1.0).unwrap(), false).unwrap();
    let expected: Vec<f64> = state.bodies.iter().flat_map(|b| [b.position.x, b.position.y]).collect();
    assert_eq!(xy.to_vec(), expected);

    let status =
        unsafe { trapcc_trajectory_sample(handle, 0, &mut t, xy.as_mut_ptr(), 4, ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(status, TrapccStatus::InvalidArgument);

    let mut rigidity = TrapccRigidity::default();
    assert_eq!(
        unsafe { trapcc_trajectory_rigidity(handle, &mut rigidity) },
        TrapccStatus::Ok
    );
    assert!(rigidity.max_distance_deviation < 1e-6);
    assert_eq!(rigidity.collided, 0);
    unsafe { trapcc_trajectory_free(handle) };
}

#[test]
fn simulate_refuses_negative_masses_unless_allowed() {
    let mut handle: *mut TrapccTrajectory = ptr::null_mut();
    assert_eq!(
        unsafe { trapcc_simulate(0.5, 0.5, 1.0, 1e-2, 10, 0, &mut handle) },
        TrapccStatus::Unphysical
    );
    assert!(handle.is_null());
    let status = unsafe { trapcc_simulate(0.5, 0.5, 0.1, 1e-2, 10, 1, &mut handle) };
    assert!(matches!(status, TrapccStatus::Ok | TrapccStatus::Collision));
    assert!(!handle.is_null());
    unsafe { trapcc_trajectory_free(handle) };
}

fn header_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("trapcc.h")
}

#[test]
fn header_declares_every_exported_function() {
    let header = std::fs::read_to_string(header_path()).unwrap();
    for name in [
        "trapcc_version",
        "trapcc_last_error_message",
        "trapcc_solve_masses",
        "trapcc_solve_masses_linear",
        "trapcc_classify",
        "trapcc_cc_residual",
        "trapcc_is_central",
        "trapcc_exact_boundary",
        "trapcc_published_boundary",
        "trapcc_raster_new",
        "trapcc_raster_dims",
        "trapcc_raster_cell",
        "trapcc_raster_free",
        "trapcc_simulate",
        "trapcc_trajectory_len",
        "trapcc_trajectory_bodies",
        "trapcc_trajectory_sample",
        "trapcc_trajectory_rigidity",
        "trapcc_trajectory_free",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct TrapccRaster TrapccRaster;"));
    assert!(header.contains("TRAPCC_STATUS_OK = 0"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let Ok(cc) = which("cc") else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = tempfile_dir();
    let source = dir.join("use_header.c");
    std::fs::write(
        &source,
        "#include \"trapcc.h\"\n\
         int main(void) {\n\
           TrapccMasses out;\n\
           TrapccRaster *grid = NULL;\n\
           if (trapcc_solve_masses(0.5, 1.0, &out) != TRAPCC_STATUS_OK) return 1;\n\
           trapcc_raster_free(grid);\n\
           return out.label == TRAPCC_LABEL_BOTH_POSITIVE ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let include = header_path().parent().unwrap().to_path_buf();
    for (compiler, extra) in [(cc.as_str(), &["-std=c99"][..]), ("c++", &["-x", "c++"][..])] {
        let status = Command::new(compiler)
            .args(extra)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
            .arg(&include)
            .arg(&source)
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
            Err(e) => eprintln!("{compiler} unavailable: {e}"),
        }
    }
}

fn which(program: &str) -> Result<String, ()> {
    Command::new(program)
        .arg("--version")
        .output()
        .map(|_| program.to_string())
        .map_err(|_| ())
}

fn tempfile_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("abi-header");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
