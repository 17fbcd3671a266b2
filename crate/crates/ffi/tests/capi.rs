use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use localhom_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lh_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

/// Plus-shaped sample: two segments of half-length 0.5 crossing at the origin.
fn cross(h: f64) -> Vec<f64> {
    let n = (0.5 / h).round() as i32;
    let mut coords = vec![0.0, 0.0];
    for i in 1..=n {
        let t = i as f64 * h;
        coords.extend([t, 0.0, -t, 0.0, 0.0, t, 0.0, -t]);
    }
    coords
}

unsafe fn new_cloud(coords: &[f64], dim: usize) -> *mut LhPointCloud {
    let mut cloud = ptr::null_mut();
    let status = lh_cloud_new(coords.as_ptr(), coords.len() / dim, dim, &mut cloud);
    assert_eq!(status, LhStatus::Ok, "{}", last_error());
    cloud
}

#[test]
fn alpha_pipeline_round_trip() {
    unsafe {
        let coords = cross(0.02);
        let cloud = new_cloud(&coords, 2);
        assert_eq!(lh_cloud_len(cloud), coords.len() / 2);
        assert_eq!(lh_cloud_dim(cloud), 2);

        let x = [0.0, 0.0];
        let query = LhQuery {
            basepoint: x.as_ptr(),
            basepoint_len: 2,
            radius: 0.25,
            epsilon: 0.02,
            max_scale: 0.12,
            max_dim: 1,
        };
        let mut diagram = ptr::null_mut();
        let mut bound = 0.0;
        assert_eq!(
            lh_alpha_pipeline(cloud, &query, &mut diagram, &mut bound),
            LhStatus::Ok
        );
        assert!((bound - 0.2176).abs() < 1e-12);

        let mut long_lived = 0;
        for i in 0..lh_diagram_len(diagram) {
            let mut p = LhDiagramPoint {
                dim: 0,
                birth: 0.0,
                death: 0.0,
            };
            assert_eq!(lh_diagram_point(diagram, i, &mut p), LhStatus::Ok);
            if p.dim == 1 && p.death - p.birth > 2.0 * bound {
                long_lived += 1;
            }
        }
        assert_eq!(long_lived, 3);

        let mut p = LhDiagramPoint {
            dim: 0,
            birth: 0.0,
            death: 0.0,
        };
        let past_end = lh_diagram_len(diagram);
        assert_eq!(
            lh_diagram_point(diagram, past_end, &mut p),
            LhStatus::InvalidArgument
        );
        assert!(last_error().contains("out of range"));

        // write, read back, compare
        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("d.txt").to_str().unwrap()).unwrap();
        assert_eq!(lh_diagram_write(diagram, path.as_ptr()), LhStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(lh_diagram_read(path.as_ptr(), &mut back), LhStatus::Ok);
        let mut dist = f64::NAN;
        assert_eq!(lh_bottleneck(diagram, back, &mut dist), LhStatus::Ok);
        assert_eq!(dist, 0.0);
        assert_eq!(lh_diagram_len(back), lh_diagram_len(diagram));

        lh_diagram_free(back);
        lh_diagram_free(diagram);
        lh_cloud_free(cloud);
    }
}

#[test]
fn r_pipeline_on_a_circle() {
    unsafe {
        let n = 126;
        let coords: Vec<f64> = (0..n)
            .flat_map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        let cloud = new_cloud(&coords, 2);
        let x = [1.0, 0.0];
        let query = LhQuery {
            basepoint: x.as_ptr(),
            basepoint_len: 2,
            radius: 1.0,
            epsilon: 0.05,
            max_scale: 0.1,
            max_dim: 1,
        };
        let mut diagram = ptr::null_mut();
        let mut bound = 0.0;
        assert_eq!(
            lh_r_pipeline(cloud, &query, &mut diagram, &mut bound),
            LhStatus::Ok
        );
        assert!((bound - 0.2).abs() < 1e-12);
        let mut first = LhDiagramPoint {
            dim: 9,
            birth: 0.0,
            death: 0.0,
        };
        assert_eq!(lh_diagram_point(diagram, 0, &mut first), LhStatus::Ok);
        assert_eq!(first.dim, 0);
        assert!((first.birth + 2.0).abs() < 1e-9);
        assert!(first.death.is_infinite());
        lh_diagram_free(diagram);
        lh_cloud_free(cloud);
    }
}

#[test]
fn failures_report_status_and_message() {
    unsafe {
        let mut bound = 0.0;
        assert_eq!(
            lh_certified_bound_alpha(0.02, 0.3, 0.25, &mut bound),
            LhStatus::GuaranteeLapsed
        );
        assert!(last_error().contains("guarantee"));
        assert_eq!(
            lh_certified_bound_alpha(0.02, 0.12, 0.25, &mut bound),
            LhStatus::Ok
        );
        assert!((bound - 0.2176).abs() < 1e-12);
        assert_eq!(last_error(), "");

        assert_eq!(
            lh_certified_bound_alpha(0.02, 0.1, 0.25, ptr::null_mut()),
            LhStatus::NullPointer
        );

        let nan = [0.0, f64::NAN];
        let mut cloud = ptr::null_mut();
        assert_eq!(
            lh_cloud_new(nan.as_ptr(), 1, 2, &mut cloud),
            LhStatus::MalformedInput
        );
        assert!(cloud.is_null());
        assert_eq!(
            lh_cloud_new(ptr::null(), 3, 2, &mut cloud),
            LhStatus::NullPointer
        );

        let missing = CString::new("/nonexistent/cloud.pts").unwrap();
        assert_eq!(lh_cloud_read(missing.as_ptr(), &mut cloud), LhStatus::Io);

        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "0 0 inf\n1 2\n").unwrap();
        let bad = CString::new(bad.to_str().unwrap()).unwrap();
        let mut diagram = ptr::null_mut();
        assert_eq!(lh_diagram_read(bad.as_ptr(), &mut diagram), LhStatus::Parse);
        assert!(last_error().starts_with("line 2"));

        let coords = cross(0.05);
        let cloud = new_cloud(&coords, 2);
        let x = [0.0, 0.0, 0.0];
        let query = LhQuery {
            basepoint: x.as_ptr(),
            basepoint_len: 3,
            radius: 0.25,
            epsilon: 0.05,
            max_scale: 0.1,
            max_dim: 1,
        };
        assert_eq!(
            lh_alpha_pipeline(cloud, &query, &mut diagram, ptr::null_mut()),
            LhStatus::InvalidArgument
        );
        assert_eq!(
            lh_alpha_pipeline(cloud, ptr::null(), &mut diagram, ptr::null_mut()),
            LhStatus::NullPointer
        );
        lh_cloud_free(cloud);
    }
}

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/localhom.h");
    std::fs::read_to_string(path).expect("header generated by the build script")
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "lh_last_error_message",
        "lh_cloud_new",
        "lh_cloud_read",
        "lh_cloud_len",
        "lh_cloud_dim",
        "lh_cloud_free",
        "lh_alpha_pipeline",
        "lh_r_pipeline",
        "lh_diagram_len",
        "lh_diagram_point",
        "lh_diagram_read",
        "lh_diagram_write",
        "lh_diagram_free",
        "lh_bottleneck",
        "lh_certified_bound_alpha",
        "typedef struct LhPointCloud LhPointCloud;",
        "typedef struct LhDiagram LhDiagram;",
        "LH_STATUS_GUARANTEE_LAPSED = 5",
        "#ifndef LOCALHOM_H",
    ] {
        assert!(h.contains(name), "header is missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(cc.status.success());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"localhom.h\"\n\
         int main(void) {\n\
           LhPointCloud *c = 0;\n\
           double xy[2] = {0, 0};\n\
           LhStatus s = lh_cloud_new(xy, 1, 2, &c);\n\
           lh_cloud_free(c);\n\
           return s == LH_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
