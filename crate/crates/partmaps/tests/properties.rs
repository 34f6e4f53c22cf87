use proptest::prelude::*;

use partmaps::colored::{from_colored, to_colored};
use partmaps::maps::{
    andrews_forward, andrews_inverse, duplicate, macmahon_forward, macmahon_inverse, strip_tuples,
};
use partmaps::qseries::TruncatedSeries;
use partmaps::{phi, phi_inv, Modulus, Partition};

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..max_len).prop_map(|v| Partition::new(v).unwrap())
}

fn regular(m: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=30u32, 0..12).prop_map(move |mut v| {
        v.retain(|x| x % m != 0);
        Partition::new(v).unwrap()
    })
}

/// Distinct values, each repeated 1..m times.
fn bounded(m: u32) -> impl Strategy<Value = Partition> {
    prop::collection::btree_map(1..=30u32, 1..m, 0..10).prop_map(|counts| {
        let parts = counts
            .into_iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c as usize))
            .collect();
        Partition::new(parts).unwrap()
    })
}

/// Parts even or ≡ 2r+1 (mod 4r+2).
fn andrews_input(r: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec((0..6u32, 0..=2 * r), 0..10).prop_map(move |v| {
        let big = 4 * r + 2;
        let parts = v
            .into_iter()
            .map(|(k, i)| {
                if i == 0 {
                    big * k + 2 * r + 1
                } else {
                    big * k + 2 * i
                }
            })
            .collect();
        Partition::new(parts).unwrap()
    })
}

fn series(degree: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((0..=degree, 0..3u32, -5i64..=5), 0..12).prop_map(move |terms| {
        let mut s = TruncatedSeries::zero(degree, 1);
        for (n, e, v) in terms {
            s.add_term(n, &[e], v).unwrap();
        }
        s
    })
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(p in partition(25, 15)) {
        let c = p.conjugate();
        prop_assert_eq!(c.weight(), p.weight());
        prop_assert_eq!(c.largest().unwrap_or(0), p.len() as u32);
        prop_assert_eq!(c.conjugate(), p);
    }

    #[test]
    fn text_and_json_round_trip(p in partition(40, 12)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn conjugation_transports_types(p in partition(20, 15), m in 2..7u32) {
        let m = Modulus::new(m).unwrap();
        prop_assert_eq!(p.alt_sum_type(m), p.conjugate().length_type(m));
    }

    #[test]
    fn duplication_reverses_alt_sum_type(p in partition(20, 12), m in 2..7u32) {
        let m = Modulus::new(m).unwrap();
        let d = duplicate(&p, m);
        prop_assert_eq!(d.weight(), p.weight() * u64::from(m.get() - 1));
        prop_assert_eq!(d.alt_sum_type(m), p.alt_sum_type(m).reversed());
    }

    #[test]
    fn phi_contract((m, p) in (2..7u32).prop_flat_map(|m| (Just(m), regular(m)))) {
        let md = Modulus::new(m).unwrap();
        let q = phi(&p, md).unwrap();
        prop_assert_eq!(q.weight(), p.weight());
        prop_assert!(q.max_multiplicity() < m);
        prop_assert_eq!(q.alt_sum_type(md), p.length_type(md));
        prop_assert_eq!(phi_inv(&q, md).unwrap(), p);
    }

    #[test]
    fn phi_inverse_contract((m, q) in (2..7u32).prop_flat_map(|m| (Just(m), bounded(m)))) {
        let md = Modulus::new(m).unwrap();
        let p = phi_inv(&q, md).unwrap();
        prop_assert!(p.is_m_regular(md));
        prop_assert_eq!(p.length_type(md), q.alt_sum_type(md));
        prop_assert_eq!(phi(&p, md).unwrap(), q);
    }

    #[test]
    fn macmahon_chain_round_trip(lambda in andrews_input(1)) {
        let t = macmahon_forward(&lambda).unwrap();
        prop_assert_eq!(t.tau.weight(), lambda.weight());
        prop_assert_eq!(t.pi.weight(), 2 * t.mu.weight());
        let back = macmahon_inverse(&t.tau).unwrap();
        prop_assert_eq!(back.steps(), t.steps());
    }

    #[test]
    fn andrews_chain_round_trip((r, lambda) in (1..4u32).prop_flat_map(|r| (Just(r), andrews_input(r)))) {
        let t = andrews_forward(&lambda, r).unwrap();
        prop_assert_eq!(t.tau.weight(), lambda.weight());
        let back = andrews_inverse(&t.tau, r).unwrap();
        prop_assert_eq!(&back.lambda, &lambda);
        prop_assert_eq!(&back.rho, &t.rho);
        // ρ's multiplicities, once t-tuples are stripped, are even and at most 4r
        let (reduced, _) = strip_tuples(&t.rho, 2 * r + 1).unwrap();
        prop_assert!(reduced.runs().all(|(_, c)| c % 2 == 0 && c <= 4 * r));
        prop_assert_eq!(reduced, t.pi);
    }

    #[test]
    fn coloring_round_trip((r, lambda) in (1..4u32).prop_flat_map(|r| (Just(r), andrews_input(r)))) {
        let tau = andrews_forward(&lambda, r).unwrap().tau;
        let cp = to_colored(&tau, r).unwrap();
        prop_assert!(cp.is_admissible());
        prop_assert_eq!(from_colored(&cp), tau);
    }

    #[test]
    fn series_multiplication_laws(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(TruncatedSeries::one(6, 1).mul(&a).unwrap(), a);
    }
}
