//! Observables and their averaged behaviour in normal-form coordinates.

mod average;
mod kernel;
mod spec;

pub use average::{
    average_classical, average_family, classical_response, data_order, matrix_elements_quantum,
    AveragedObservable,
};
pub use kernel::{euler_derivative, kernel_point, polylog_neg, trace_kernel, trace_kernel_u};
pub use spec::{make_observable, mode_exponents, observable_family, ObservableSpec, QuadraticKind};
