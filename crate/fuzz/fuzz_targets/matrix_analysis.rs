#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(h) = lrcx_cli::parse_bytes(data) else { return };
    if h.rows() > 64 || h.cols() > 64 {
        return;
    }
    let basis = h.nullspace_basis();
    assert_eq!(h.rank() + basis.rows(), h.cols());
    for v in basis.row_vecs() {
        assert!(h.mul_vec(&v).is_zero());
    }
    if basis.rows() <= 12 {
        let d = lrcx::gf2::min_distance(&h).expect("dimension is small");
        if let lrcx::Distance::Finite(w) = d {
            assert!(w >= 1 && w <= h.cols());
        }
    }
});
