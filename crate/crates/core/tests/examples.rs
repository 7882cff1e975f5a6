//! Every example, compiled into the test harness and run.

mod classical_bnf {
    #![allow(dead_code)]
    include!("../examples/classical_bnf.rs");
}

mod quantum_bnf_vs_fock {
    #![allow(dead_code)]
    include!("../examples/quantum_bnf_vs_fock.rs");
}

mod williamson_frame {
    #![allow(dead_code)]
    include!("../examples/williamson_frame.rs");
}

mod fermi_schrodinger {
    #![allow(dead_code)]
    include!("../examples/fermi_schrodinger.rs");
}

mod observables_averages {
    #![allow(dead_code)]
    include!("../examples/observables_averages.rs");
}

mod invert_schrodinger {
    #![allow(dead_code)]
    include!("../examples/invert_schrodinger.rs");
}

mod invert_general_well {
    #![allow(dead_code)]
    include!("../examples/invert_general_well.rs");
}

mod periodic_roundtrip {
    #![allow(dead_code)]
    include!("../examples/periodic_roundtrip.rs");
}

mod frequencies_from_spectrum {
    #![allow(dead_code)]
    include!("../examples/frequencies_from_spectrum.rs");
}

mod trace_unmixing {
    #![allow(dead_code)]
    include!("../examples/trace_unmixing.rs");
}

mod periodic_fermi_loop {
    #![allow(dead_code)]
    include!("../examples/periodic_fermi_loop.rs");
}

mod angle_shift {
    #![allow(dead_code)]
    include!("../examples/angle_shift.rs");
}

#[test]
fn example_classical_bnf() {
    classical_bnf::run_example().unwrap();
}

#[test]
fn example_quantum_bnf_vs_fock() {
    quantum_bnf_vs_fock::run_example().unwrap();
}

#[test]
fn example_williamson_frame() {
    williamson_frame::run_example().unwrap();
}

#[test]
fn example_fermi_schrodinger() {
    fermi_schrodinger::run_example().unwrap();
}

#[test]
fn example_observables_averages() {
    observables_averages::run_example().unwrap();
}

#[test]
fn example_invert_schrodinger() {
    invert_schrodinger::run_example().unwrap();
}

#[test]
fn example_invert_general_well() {
    invert_general_well::run_example().unwrap();
}

#[test]
fn example_periodic_roundtrip() {
    periodic_roundtrip::run_example().unwrap();
}

#[test]
fn example_frequencies_from_spectrum() {
    frequencies_from_spectrum::run_example().unwrap();
}

#[test]
fn example_trace_unmixing() {
    trace_unmixing::run_example().unwrap();
}

#[test]
fn example_periodic_fermi_loop() {
    periodic_fermi_loop::run_example().unwrap();
}

#[test]
fn example_angle_shift() {
    angle_shift::run_example().unwrap();
}
