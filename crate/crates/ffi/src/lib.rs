//! C interface to `coprimenet`.
//!
//! Networks live behind the opaque `CpnNetwork` handle. Every fallible call
//! returns a `CpnStatus`; on failure `cpn_last_error_message` describes the
//! error for the calling thread. Outputs are written through pointers only
//! on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufWriter;
use std::panic::{catch_unwind, AssertUnwindSafe};

use coprimenet::metrics::{average_degree, average_local_clustering, diameter, link_density, Diameter};
use coprimenet::spectral::{adjacency_lambda1, laplacian_extremes, SpectralOptions};
use coprimenet::{build_sieve, CoprimeNetwork, Error};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpnStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was outside the operation's domain.
    Domain = 2,
    /// The request exceeded a resource cap.
    SizeCap = 3,
    /// The graph is disconnected where connectivity is required.
    Disconnected = 4,
    /// An eigensolver did not converge.
    NonConvergence = 5,
    /// The label is not a node of the network.
    NotFound = 6,
    /// The caller's buffer is too small.
    BufferTooSmall = 7,
    Io = 8,
    /// A Rust panic was caught at the boundary.
    Panic = 9,
    Internal = 10,
}

/// Opaque network handle.
pub struct CpnNetwork {
    inner: CoprimeNetwork,
}

/// Summary statistics; `diameter` is -1 when the graph is disconnected
/// and `link_density` is NaN for fewer than two nodes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpnStats {
    pub n: u64,
    pub node_count: u64,
    pub edge_count: u64,
    pub max_degree: u64,
    pub link_density: f64,
    pub avg_degree: f64,
    pub avg_clustering: f64,
    pub diameter: i64,
}

/// Laplacian extremes and solver diagnostics.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpnSpectral {
    pub lambda2: f64,
    pub lambda_n: f64,
    pub sync_ratio: f64,
    pub lambda1_adj: f64,
    pub iterations: u64,
    pub residual: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CpnStatus, msg: impl Into<String>) -> CpnStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> CpnStatus {
    match e {
        Error::Domain(_) | Error::Overflow(_) => CpnStatus::Domain,
        Error::SizeCap { .. } => CpnStatus::SizeCap,
        Error::Disconnected { .. } => CpnStatus::Disconnected,
        Error::NonConvergence { .. } => CpnStatus::NonConvergence,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => CpnStatus::Io,
        Error::Generation(_) => CpnStatus::Internal,
    }
}

/// Run `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), CpnStatus>) -> CpnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CpnStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(CpnStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn lift<T>(r: coprimenet::Result<T>) -> Result<T, CpnStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn net_ref<'a>(net: *const CpnNetwork) -> Result<&'a CoprimeNetwork, CpnStatus> {
    // SAFETY: the caller passes a handle from `cpn_network_build` that has not been freed.
    unsafe { net.as_ref() }
        .map(|h| &h.inner)
        .ok_or_else(|| fail(CpnStatus::NullPointer, "network handle is null"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), CpnStatus> {
    if out.is_null() {
        return Err(fail(CpnStatus::NullPointer, "output pointer is null"));
    }
    // SAFETY: non-null and, per the contract, valid for writes of T.
    unsafe { out.write(value) };
    Ok(())
}

fn index_of(net: &CoprimeNetwork, label: u64) -> Result<usize, CpnStatus> {
    net.index_of(label)
        .ok_or_else(|| fail(CpnStatus::NotFound, format!("{label} is not a node for n = {}", net.n())))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cpn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cpn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Build the network on the composites in `[4, n]`, refusing `n > max_n`
/// (0 selects the library default cap).
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_build(n: u64, max_n: u64, out: *mut *mut CpnNetwork) -> CpnStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(CpnStatus::NullPointer, "output pointer is null"));
        }
        let cap = if max_n == 0 { coprimenet::network::DEFAULT_MAX_N } else { max_n };
        if n > cap {
            return Err(fail(CpnStatus::SizeCap, format!("n = {n} exceeds cap {cap}")));
        }
        let sieve = lift(build_sieve(n.max(2)))?;
        let inner = lift(CoprimeNetwork::build_capped(n, &sieve, cap))?;
        let handle = Box::into_raw(Box::new(CpnNetwork { inner }));
        // SAFETY: checked non-null above.
        unsafe { write_out(out, handle) }
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `net` must be null or a handle from `cpn_network_build` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_free(net: *mut CpnNetwork) {
    if !net.is_null() {
        // SAFETY: ownership returns from the matching Box::into_raw.
        drop(unsafe { Box::from_raw(net) });
    }
}

/// # Safety
/// `net` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_node_count(net: *const CpnNetwork, out: *mut u64) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        unsafe { write_out(out, net.node_count() as u64) }
    })
}

/// # Safety
/// `net` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_edge_count(net: *const CpnNetwork, out: *mut u64) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        unsafe { write_out(out, net.edge_count()) }
    })
}

/// Copy node labels in ascending order into `buf`. `written` receives
/// the node count; if `len` is smaller, nothing is copied and
/// `BufferTooSmall` is returned. `buf` may be null when `len` is 0.
///
/// # Safety
/// `buf` must be valid for `len` writes and `written` for one.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_labels(
    net: *const CpnNetwork,
    buf: *mut u64,
    len: usize,
    written: *mut usize,
) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        let labels = net.labels();
        unsafe { write_out(written, labels.len()) }?;
        if len < labels.len() {
            return Err(fail(
                CpnStatus::BufferTooSmall,
                format!("buffer holds {len} labels, need {}", labels.len()),
            ));
        }
        if buf.is_null() && !labels.is_empty() {
            return Err(fail(CpnStatus::NullPointer, "label buffer is null"));
        }
        // SAFETY: buf holds at least labels.len() elements.
        unsafe { std::ptr::copy_nonoverlapping(labels.as_ptr(), buf, labels.len()) };
        Ok(())
    })
}

/// Degree of the node labelled `label`.
///
/// # Safety
/// `net` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_degree(net: *const CpnNetwork, label: u64, out: *mut u64) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        let u = index_of(net, label)?;
        unsafe { write_out(out, net.degrees()[u] as u64) }
    })
}

/// Whether labels `k` and `l` are adjacent.
///
/// # Safety
/// `net` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_has_edge(net: *const CpnNetwork, k: u64, l: u64, out: *mut bool) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        let (u, v) = (index_of(net, k)?, index_of(net, l)?);
        unsafe { write_out(out, net.graph().has_edge(u, v)) }
    })
}

/// # Safety
/// `net` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_stats(net: *const CpnNetwork, out: *mut CpnStats) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        let g = net.graph();
        let stats = CpnStats {
            n: net.n(),
            node_count: net.node_count() as u64,
            edge_count: net.edge_count(),
            max_degree: g.max_degree() as u64,
            link_density: link_density(g).unwrap_or(f64::NAN),
            avg_degree: lift(average_degree(g))?,
            avg_clustering: lift(average_local_clustering(g))?,
            diameter: match diameter(g) {
                Diameter::Finite(d) => d as i64,
                Diameter::Disconnected { .. } => -1,
            },
        };
        unsafe { write_out(out, stats) }
    })
}

/// Laplacian `lambda_2`, `lambda_N` and the adjacency `lambda_1`, with the
/// start vector drawn from `seed`. Fails with `Disconnected` when the
/// network is not connected.
///
/// # Safety
/// `net` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_spectral(net: *const CpnNetwork, seed: u64, out: *mut CpnSpectral) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        let opts = SpectralOptions { seed, ..Default::default() };
        let lap = lift(laplacian_extremes(net.graph(), &opts))?;
        let adj = lift(adjacency_lambda1(net.graph(), &opts))?;
        let s = CpnSpectral {
            lambda2: lap.lambda2,
            lambda_n: lap.lambda_n,
            sync_ratio: lap.sync_ratio(),
            lambda1_adj: adj.value,
            iterations: (lap.iterations + adj.iterations) as u64,
            residual: lap.residual.max(adj.residual),
        };
        unsafe { write_out(out, s) }
    })
}

/// Write the `u v` label edge list to `path`.
///
/// # Safety
/// `net` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cpn_network_write_edge_list(net: *const CpnNetwork, path: *const c_char) -> CpnStatus {
    guard(|| {
        let net = unsafe { net_ref(net) }?;
        if path.is_null() {
            return Err(fail(CpnStatus::NullPointer, "path is null"));
        }
        // SAFETY: non-null NUL-terminated string per the contract.
        let path = unsafe { CStr::from_ptr(path) }
            .to_str()
            .map_err(|_| fail(CpnStatus::Domain, "path is not UTF-8"))?;
        let file = File::create(path).map_err(|e| fail(CpnStatus::Io, format!("{path}: {e}")))?;
        lift(net.write_edge_list(BufWriter::new(file)))
    })
}
