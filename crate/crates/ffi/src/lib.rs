//! C ABI for `localhom`.
//!
//! Objects cross the boundary as opaque heap handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns an
//! [`LhStatus`]; on failure a description is available from
//! [`lh_last_error_message`] on the same thread. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use localhom::geometry::{LocalQuery, PointCloud};
use localhom::{io, local, metric, Error, PersistenceDiagram};

/// Opaque point cloud.
pub struct LhPointCloud(PointCloud);

/// Opaque persistence diagram.
pub struct LhDiagram(PersistenceDiagram);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    MalformedInput = 3,
    Structural = 4,
    /// The requested scale is not below the ball radius.
    GuaranteeLapsed = 5,
    Parse = 6,
    Io = 7,
    /// A bug inside the library; the call had no effect.
    Panic = 8,
}

/// Parameters of a local query. `basepoint` points to `basepoint_len`
/// coordinates.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LhQuery {
    pub basepoint: *const f64,
    pub basepoint_len: usize,
    pub radius: f64,
    pub epsilon: f64,
    pub max_scale: f64,
    pub max_dim: usize,
}

/// One diagram point; `death` is `INFINITY` for essential classes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhDiagramPoint {
    pub dim: u32,
    pub birth: f64,
    pub death: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(LhStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::MalformedInput(_) => LhStatus::MalformedInput,
            Error::InvalidArgument(_) => LhStatus::InvalidArgument,
            Error::Structural(_) => LhStatus::Structural,
            Error::GuaranteeLapsed { .. } => LhStatus::GuaranteeLapsed,
            Error::Parse { .. } => LhStatus::Parse,
            Error::Io(_) => LhStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LhStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LhStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            LhStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a str, Failure> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map_err(|_| Failure(LhStatus::InvalidArgument, "path is not valid UTF-8".into()))
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn lh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a cloud from `n_points * dim` row-major coordinates.
///
/// # Safety
/// `coords` must point to `n_points * dim` readable doubles (it may be null
/// when that product is zero) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_cloud_new(
    coords: *const f64,
    n_points: usize,
    dim: usize,
    out: *mut *mut LhPointCloud,
) -> LhStatus {
    guard(|| {
        let total = n_points
            .checked_mul(dim)
            .ok_or_else(|| Failure(LhStatus::InvalidArgument, "size overflow".into()))?;
        let flat: &[f64] = if total == 0 {
            &[]
        } else if coords.is_null() {
            return Err(null("coords"));
        } else {
            std::slice::from_raw_parts(coords, total)
        };
        let cloud = if n_points == 0 {
            PointCloud::empty(dim)?
        } else if dim == 0 {
            return Err(Failure(
                LhStatus::InvalidArgument,
                "dimension must be positive".into(),
            ));
        } else {
            PointCloud::new(flat.chunks(dim).map(<[f64]>::to_vec).collect())?
        };
        write_out(out, Box::into_raw(Box::new(LhPointCloud(cloud))), "out")
    })
}

/// Reads a point-cloud file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_cloud_read(
    path: *const c_char,
    out: *mut *mut LhPointCloud,
) -> LhStatus {
    guard(|| {
        let cloud = io::read_point_cloud(path_arg(path)?)?;
        write_out(out, Box::into_raw(Box::new(LhPointCloud(cloud))), "out")
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `cloud` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lh_cloud_len(cloud: *const LhPointCloud) -> usize {
    cloud.as_ref().map_or(0, |c| c.0.len())
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `cloud` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lh_cloud_dim(cloud: *const LhPointCloud) -> usize {
    cloud.as_ref().map_or(0, |c| c.0.dim())
}

/// # Safety
/// `cloud` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn lh_cloud_free(cloud: *mut LhPointCloud) {
    if !cloud.is_null() {
        drop(Box::from_raw(cloud));
    }
}

unsafe fn to_query(q: *const LhQuery) -> Result<LocalQuery, Failure> {
    let q = deref(q, "query")?;
    if q.basepoint.is_null() && q.basepoint_len > 0 {
        return Err(null("basepoint"));
    }
    let basepoint = if q.basepoint_len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(q.basepoint, q.basepoint_len).to_vec()
    };
    Ok(LocalQuery {
        basepoint,
        radius: q.radius,
        epsilon: q.epsilon,
        max_scale: q.max_scale,
        max_dim: q.max_dim,
    })
}

unsafe fn run_pipeline(
    pipeline: fn(&PointCloud, &LocalQuery) -> localhom::Result<localhom::ApproxResult>,
    cloud: *const LhPointCloud,
    query: *const LhQuery,
    out_diagram: *mut *mut LhDiagram,
    out_bound: *mut f64,
) -> LhStatus {
    guard(|| {
        let cloud = deref(cloud, "cloud")?;
        let query = to_query(query)?;
        if out_diagram.is_null() {
            return Err(null("out_diagram"));
        }
        let result = pipeline(&cloud.0, &query)?;
        if !out_bound.is_null() {
            out_bound.write(result.bound);
        }
        out_diagram.write(Box::into_raw(Box::new(LhDiagram(result.diagram))));
        Ok(())
    })
}

/// Relative diagram of the Rips pair at the query's basepoint. The certified
/// bound is written to `out_bound` unless it is null.
///
/// # Safety
/// `cloud` and `query` must be valid, `query->basepoint` must point to
/// `basepoint_len` doubles and `out_diagram` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_alpha_pipeline(
    cloud: *const LhPointCloud,
    query: *const LhQuery,
    out_diagram: *mut *mut LhDiagram,
    out_bound: *mut f64,
) -> LhStatus {
    run_pipeline(local::alpha_pipeline, cloud, query, out_diagram, out_bound)
}

/// Sublevel diagram of the negated distance to the basepoint. Only the
/// basepoint, `epsilon` and `max_dim` of the query are used, but the other
/// fields must still be positive.
///
/// # Safety
/// Same as [`lh_alpha_pipeline`].
#[no_mangle]
pub unsafe extern "C" fn lh_r_pipeline(
    cloud: *const LhPointCloud,
    query: *const LhQuery,
    out_diagram: *mut *mut LhDiagram,
    out_bound: *mut f64,
) -> LhStatus {
    run_pipeline(local::r_pipeline, cloud, query, out_diagram, out_bound)
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `diagram` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lh_diagram_len(diagram: *const LhDiagram) -> usize {
    diagram.as_ref().map_or(0, |d| d.0.len())
}

/// Copies point `index` into `out`. Points are sorted by dimension, birth
/// and death.
///
/// # Safety
/// `diagram` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lh_diagram_point(
    diagram: *const LhDiagram,
    index: usize,
    out: *mut LhDiagramPoint,
) -> LhStatus {
    guard(|| {
        let d = deref(diagram, "diagram")?;
        let p = d.0.points().get(index).ok_or_else(|| {
            Failure(
                LhStatus::InvalidArgument,
                format!("index {index} out of range for {} points", d.0.len()),
            )
        })?;
        let dim = u32::try_from(p.dim)
            .map_err(|_| Failure(LhStatus::InvalidArgument, "dimension too large".into()))?;
        write_out(
            out,
            LhDiagramPoint {
                dim,
                birth: p.birth,
                death: p.death,
            },
            "out",
        )
    })
}

/// Reads a diagram file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_diagram_read(
    path: *const c_char,
    out: *mut *mut LhDiagram,
) -> LhStatus {
    guard(|| {
        let d = io::read_diagram(path_arg(path)?)?;
        write_out(out, Box::into_raw(Box::new(LhDiagram(d))), "out")
    })
}

/// Writes a diagram file.
///
/// # Safety
/// `diagram` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lh_diagram_write(
    diagram: *const LhDiagram,
    path: *const c_char,
) -> LhStatus {
    guard(|| {
        let d = deref(diagram, "diagram")?;
        io::write_diagram(path_arg(path)?, &d.0)?;
        Ok(())
    })
}

/// # Safety
/// `diagram` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn lh_diagram_free(diagram: *mut LhDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// Bottleneck distance; `INFINITY` when the essential classes cannot be
/// matched.
///
/// # Safety
/// Both diagrams must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lh_bottleneck(
    a: *const LhDiagram,
    b: *const LhDiagram,
    out: *mut f64,
) -> LhStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        write_out(out, metric::bottleneck_distance(&a.0, &b.0), "out")
    })
}

/// `2*epsilon + alpha + alpha^2/r`; fails with `GuaranteeLapsed` when
/// `alpha >= r`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_certified_bound_alpha(
    epsilon: f64,
    alpha: f64,
    r: f64,
    out: *mut f64,
) -> LhStatus {
    guard(|| write_out(out, local::certified_bound_alpha(epsilon, alpha, r)?, "out"))
}
