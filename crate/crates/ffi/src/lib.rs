//! C ABI over `dea-core`.
//!
//! Every fallible function returns a [`DeaStatus`]; on failure the message is
//! available from [`dea_last_error_message`] on the same thread. Handles are
//! opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dea_core::classify::{
    classify_all_rdse_pareto, classify_all_unified, classify_three_pass, cross_validate, OrientedClass,
    ParetoClass, RouteResult,
};
use dea_core::cli::load_csv;
use dea_core::models::solve_unified;
use dea_core::{Dataset, DeaError, ToleranceConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidDataset = 3,
    Parse = 4,
    Io = 5,
    /// Oriented classification requested on data with negative values.
    Unsupported = 6,
    Solver = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeaMethod {
    /// One dominance program per unit.
    Unified = 0,
    /// Radial passes for nonnegative data, the Pareto pass otherwise.
    SuperEfficiency = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeaOrientedLabel {
    NotApplicable = 0,
    E = 1,
    Eprime = 2,
    We = 3,
    Nw = 4,
    Nn = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeaParetoLabel {
    E = 1,
    Eprime = 2,
    Wep = 3,
    Nep = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeaTolerance {
    pub feas_tol: f64,
    pub pos_tol: f64,
    pub binary_threshold: f64,
    pub max_iterations: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeaUnifiedResult {
    pub feasible: bool,
    pub sum_t_minus: usize,
    pub sum_t_plus: usize,
    /// Total weight of the reference units; 0 when infeasible.
    pub sigma: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeaUnitLabels {
    pub pareto: DeaParetoLabel,
    pub input: DeaOrientedLabel,
    pub output: DeaOrientedLabel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeaCrossValidation {
    pub units: usize,
    pub agreed: usize,
    pub oriented_compared: bool,
    pub unified_solves: usize,
    pub rdse_stage_one: usize,
    pub rdse_stage_two: usize,
}

/// Opaque dataset handle.
pub struct DeaDataset(Dataset);

/// Opaque per-unit classification handle.
pub struct DeaClassification(RouteResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(DeaStatus, String);

impl From<DeaError> for Failure {
    fn from(e: DeaError) -> Self {
        let status = match &e {
            DeaError::Dimension(_) | DeaError::InvalidDataset(_) | DeaError::EmptyDataset => {
                DeaStatus::InvalidDataset
            }
            DeaError::UnitOutOfRange { .. } | DeaError::InvalidConfig(_) | DeaError::Precondition(_) => {
                DeaStatus::InvalidArgument
            }
            DeaError::UnsupportedRelation(_) => DeaStatus::Unsupported,
            DeaError::Parse { .. } => DeaStatus::Parse,
            DeaError::Io(_) => DeaStatus::Io,
            _ => DeaStatus::Solver,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DeaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DeaStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside dea library".into());
            DeaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(DeaStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn config_from(tol: *const DeaTolerance) -> Result<ToleranceConfig, Failure> {
    let Some(t) = tol.as_ref() else {
        return Ok(ToleranceConfig::default());
    };
    let cfg = ToleranceConfig {
        feas_tol: t.feas_tol,
        pos_tol: t.pos_tol,
        binary_threshold: t.binary_threshold,
        max_iterations: t.max_iterations,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn oriented(label: Option<OrientedClass>) -> DeaOrientedLabel {
    match label {
        None => DeaOrientedLabel::NotApplicable,
        Some(OrientedClass::E) => DeaOrientedLabel::E,
        Some(OrientedClass::Eprime) => DeaOrientedLabel::Eprime,
        Some(OrientedClass::WE) => DeaOrientedLabel::We,
        Some(OrientedClass::NW) => DeaOrientedLabel::Nw,
        Some(OrientedClass::NN) => DeaOrientedLabel::Nn,
    }
}

fn pareto(label: ParetoClass) -> DeaParetoLabel {
    match label {
        ParetoClass::E => DeaParetoLabel::E,
        ParetoClass::Eprime => DeaParetoLabel::Eprime,
        ParetoClass::WEP => DeaParetoLabel::Wep,
        ParetoClass::NEP => DeaParetoLabel::Nep,
    }
}

/// Message of the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn dea_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn dea_tolerance_default() -> DeaTolerance {
    let d = ToleranceConfig::default();
    DeaTolerance {
        feas_tol: d.feas_tol,
        pos_tol: d.pos_tol,
        binary_threshold: d.binary_threshold,
        max_iterations: d.max_iterations,
    }
}

/// Builds a dataset from row-major `n x m` inputs and `n x s` outputs.
/// Units are named `1..=n`.
///
/// # Safety
/// `inputs` must point to `n * m` doubles, `outputs` to `n * s` doubles, and
/// `out` to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn dea_dataset_new(
    n: usize,
    m: usize,
    s: usize,
    inputs: *const f64,
    outputs: *const f64,
    out: *mut *mut DeaDataset,
) -> DeaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if inputs.is_null() || outputs.is_null() {
            return Err(null("inputs/outputs"));
        }
        let (Some(nm), Some(ns)) = (n.checked_mul(m), n.checked_mul(s)) else {
            return Err(Failure(DeaStatus::InvalidArgument, "dimensions overflow".into()));
        };
        let x = std::slice::from_raw_parts(inputs, nm);
        let y = std::slice::from_raw_parts(outputs, ns);
        let xs = (0..n).map(|j| x[j * m..(j + 1) * m].to_vec()).collect();
        let ys = (0..n).map(|j| y[j * s..(j + 1) * s].to_vec()).collect();
        let ds = Dataset::from_units(xs, ys)?;
        *out = Box::into_raw(Box::new(DeaDataset(ds)));
        Ok(())
    })
}

/// Loads a dataset from a CSV file with header `dmu,x1..xm,y1..ys`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dea_dataset_from_csv(path: *const c_char, out: *mut *mut DeaDataset) -> DeaStatus {
    guard(|| {
        if path.is_null() || out.is_null() {
            return Err(null("path/out"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Failure(DeaStatus::InvalidArgument, "path is not UTF-8".into()))?;
        *out = Box::into_raw(Box::new(DeaDataset(load_csv(path)?)));
        Ok(())
    })
}

/// # Safety
/// `ds` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dea_dataset_free(ds: *mut DeaDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Writes the unit, input and output counts. Any out-pointer may be null.
///
/// # Safety
/// `ds` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dea_dataset_shape(
    ds: *const DeaDataset,
    n: *mut usize,
    m: *mut usize,
    s: *mut usize,
) -> DeaStatus {
    guard(|| {
        let ds = &ds.as_ref().ok_or_else(|| null("ds"))?.0;
        for (p, v) in [(n, ds.n()), (m, ds.m()), (s, ds.s())] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Solves the dominance program for unit `unit` (0-based). When feasible and
/// non-null, `t_minus` receives `m` and `t_plus` receives `s` indicator values.
/// A null `tol` selects the defaults.
///
/// # Safety
/// `ds` must be a live handle, `out` writable, and the optional buffers large
/// enough.
#[no_mangle]
pub unsafe extern "C" fn dea_solve_unified(
    ds: *const DeaDataset,
    unit: usize,
    tol: *const DeaTolerance,
    out: *mut DeaUnifiedResult,
    t_minus: *mut f64,
    t_plus: *mut f64,
) -> DeaStatus {
    guard(|| {
        let ds = &ds.as_ref().ok_or_else(|| null("ds"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let cfg = config_from(tol)?;
        let outcome = solve_unified(ds, unit, &cfg)?;
        *out = match outcome.solution() {
            None => DeaUnifiedResult {
                feasible: false,
                sum_t_minus: 0,
                sum_t_plus: 0,
                sigma: 0.0,
            },
            Some(sol) => {
                if !t_minus.is_null() {
                    ptr::copy_nonoverlapping(sol.t_minus.as_ptr(), t_minus, sol.t_minus.len());
                }
                if !t_plus.is_null() {
                    ptr::copy_nonoverlapping(sol.t_plus.as_ptr(), t_plus, sol.t_plus.len());
                }
                DeaUnifiedResult {
                    feasible: true,
                    sum_t_minus: sol.sum_t_minus,
                    sum_t_plus: sol.sum_t_plus,
                    sigma: sol.sigma,
                }
            }
        };
        Ok(())
    })
}

/// Classifies every unit with the chosen method.
///
/// # Safety
/// `ds` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dea_classify(
    ds: *const DeaDataset,
    method: DeaMethod,
    tol: *const DeaTolerance,
    out: *mut *mut DeaClassification,
) -> DeaStatus {
    guard(|| {
        let ds = &ds.as_ref().ok_or_else(|| null("ds"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = config_from(tol)?;
        let result = match method {
            DeaMethod::Unified => classify_all_unified(ds, &cfg)?,
            DeaMethod::SuperEfficiency if ds.is_nonnegative() => classify_three_pass(ds, &cfg)?,
            DeaMethod::SuperEfficiency => classify_all_rdse_pareto(ds, &cfg)?,
        };
        *out = Box::into_raw(Box::new(DeaClassification(result)));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dea_classification_len(c: *const DeaClassification) -> usize {
    c.as_ref().map_or(0, |c| c.0.units.len())
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dea_classification_get(
    c: *const DeaClassification,
    index: usize,
    out: *mut DeaUnitLabels,
) -> DeaStatus {
    guard(|| {
        let c = &c.as_ref().ok_or_else(|| null("c"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let u = c.units.get(index).ok_or(DeaError::UnitOutOfRange {
            index,
            units: c.units.len(),
        })?;
        *out = DeaUnitLabels {
            pareto: pareto(u.pareto),
            input: oriented(u.input),
            output: oriented(u.output),
        };
        Ok(())
    })
}

/// LP solves performed, split into first-stage and slack-stage programs.
///
/// # Safety
/// `c` must be a live handle; out-pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn dea_classification_solves(
    c: *const DeaClassification,
    stage_one: *mut usize,
    stage_two: *mut usize,
) -> DeaStatus {
    guard(|| {
        let counts = c.as_ref().ok_or_else(|| null("c"))?.0.lp_solves;
        if let Some(p) = stage_one.as_mut() {
            *p = counts.stage_one;
        }
        if let Some(p) = stage_two.as_mut() {
            *p = counts.stage_two;
        }
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dea_classification_free(c: *mut DeaClassification) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs both routes and compares their labels.
///
/// # Safety
/// `ds` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dea_cross_validate(
    ds: *const DeaDataset,
    tol: *const DeaTolerance,
    out: *mut DeaCrossValidation,
) -> DeaStatus {
    guard(|| {
        let ds = &ds.as_ref().ok_or_else(|| null("ds"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let cfg = config_from(tol)?;
        let r = cross_validate(ds, &cfg)?;
        *out = DeaCrossValidation {
            units: r.units.len(),
            agreed: r.agreement_count(),
            oriented_compared: r.oriented_compared,
            unified_solves: r.unified_solves.total(),
            rdse_stage_one: r.rdse_solves.stage_one,
            rdse_stage_two: r.rdse_solves.stage_two,
        };
        Ok(())
    })
}
