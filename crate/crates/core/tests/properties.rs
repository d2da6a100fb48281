use burstcover::cover::{verify_certificate, BurstCoverer};
use burstcover::cyclic::{make_cyclic_code, standard_corpus};
use burstcover::gf2::{default_primitive, poly_order, primitive_polynomials, BinaryPolynomial};
use burstcover::matrix::BinaryMatrix;
use burstcover::radius::{cyclic_burst_radius, geometric_uncovered, matrix_burst_radius, CodeSource};
use proptest::prelude::*;

fn full_rank_matrix() -> impl Strategy<Value = BinaryMatrix> {
    (2usize..=6, 4usize..=12)
        .prop_flat_map(|(r, n)| (Just(r), proptest::collection::vec(1u64..(1 << r), n.max(r))))
        .prop_map(|(r, cols)| BinaryMatrix::from_columns(r, cols).unwrap())
        .prop_filter("full row rank", |h| h.is_full_row_rank())
}

/// Smallest `b` such that every syndrome is a sum of columns inside some
/// window of `b` consecutive positions.
fn naive_radius(h: &BinaryMatrix, cyclic: bool) -> usize {
    let (r, n) = (h.rows(), h.cols());
    for b in 1..=n {
        let mut seen = vec![false; 1 << r];
        let starts = if cyclic { n } else { n - b + 1 };
        for i in 0..starts {
            for mask in 0u64..(1 << b) {
                let s = (0..b).filter(|k| mask >> k & 1 == 1).fold(0, |acc, k| acc ^ h.column((i + k) % n));
                seen[s as usize] = true;
            }
        }
        if seen.iter().all(|&x| x) {
            return b;
        }
    }
    unreachable!("full row rank")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn row_operations_keep_the_radius(h in full_rank_matrix(), ops in proptest::collection::vec((0usize..6, 0usize..6), 0..8)) {
        let mut g = h.clone();
        for (a, b) in ops {
            let (a, b) = (a % g.rows(), b % g.rows());
            if a != b {
                g.add_row(a, b);
            } else {
                g.swap_rows(a, (a + 1) % g.rows());
            }
        }
        for cyclic in [false, true] {
            prop_assert_eq!(matrix_burst_radius(&h, cyclic).unwrap().b, matrix_burst_radius(&g, cyclic).unwrap().b);
        }
    }

    #[test]
    fn cyclic_windows_never_hurt(h in full_rank_matrix()) {
        let plain = matrix_burst_radius(&h, false).unwrap().b;
        let cyclic = matrix_burst_radius(&h, true).unwrap().b;
        prop_assert!(cyclic <= plain);
        prop_assert!(plain >= 1);
        prop_assert!(plain <= h.cols());
    }

    #[test]
    fn matches_naive_enumeration(h in full_rank_matrix(), cyclic in any::<bool>()) {
        prop_assert_eq!(matrix_burst_radius(&h, cyclic).unwrap().b, naive_radius(&h, cyclic));
    }

    #[test]
    fn covering_is_monotone(h in full_rank_matrix(), cyclic in any::<bool>()) {
        let b = matrix_burst_radius(&h, cyclic).unwrap().b;
        for w in 0..=h.cols() {
            let covers = geometric_uncovered(CodeSource::Matrix(&h), w, cyclic).unwrap().is_none();
            prop_assert_eq!(covers, w >= b, "width {}", w);
        }
    }

    #[test]
    fn certificates_are_sound(idx in 0usize..37, x in any::<u64>(), slack in 0usize..3) {
        let corpus = standard_corpus().unwrap();
        let code = &corpus[idx % corpus.len()].code;
        let x = x & ((1u64 << code.r()) - 1);
        let b = (cyclic_burst_radius(code).unwrap().b + slack).min(code.r());
        let cert = BurstCoverer::new(code).unwrap().cover(x, b).unwrap();
        prop_assert!(verify_certificate(code, x, &cert, b));
        prop_assert!(cert.iterations <= code.n());
    }

    #[test]
    fn division_reconstructs(a in any::<u64>(), b in 1u64..) {
        let (a, b) = (BinaryPolynomial::from_u64(a), BinaryPolynomial::from_u64(b));
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn orbit_radius_matches_brute_force_on_products(i in 0usize..6, j in 0usize..18) {
        let f = primitive_polynomials(3 + i % 3).nth(i / 3).unwrap();
        let g = primitive_polynomials(4 + j % 3).nth(j / 3 % 2).unwrap();
        prop_assume!(f != g);
        let n = burstcover::gf2::factor::lcm_u64(poly_order(&f).unwrap(), poly_order(&g).unwrap()) as usize;
        let code = make_cyclic_code(n, f.mul(&g)).unwrap();
        let orbit = cyclic_burst_radius(&code).unwrap().b;
        prop_assert_eq!(orbit, matrix_burst_radius(&code.parity_check_matrix(), true).unwrap().b);
    }
}

#[test]
fn primitive_default_is_smallest() {
    for m in 1..=12 {
        assert_eq!(primitive_polynomials(m).next().unwrap(), default_primitive(m));
    }
}
