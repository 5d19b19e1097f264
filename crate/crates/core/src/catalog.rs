//! Named example terms.
//!
//! `L0 = Σ_{ω*} κ`, `Lₙ₊₁ = Σ_{x∈Lₙ} L0`, and `L` is their union with each
//! point identified with the least element of block 0 of its own copy of `L0`.

use crate::finposet::FinPoset;
use crate::sampler::Address;
use crate::term::OrderTerm;

pub fn l0() -> OrderTerm {
    OrderTerm::sum(OrderTerm::OmegaStar, OrderTerm::Kappa)
}

/// The finite stage `Lₙ`.
pub fn l_stage(n: usize) -> OrderTerm {
    (0..n).fold(l0(), |acc, _| OrderTerm::sum(acc, l0()))
}

pub fn l_limit() -> OrderTerm {
    OrderTerm::limsum(
        l0(),
        l0(),
        Address::block(Address::finite(0), Address::finite(0)),
    )
}

/// `κ ⊔ ω-antichain`: κ-AC but not FAC.
pub fn non_fac_witness() -> OrderTerm {
    OrderTerm::lsum(
        FinPoset::antichain(2),
        vec![OrderTerm::Kappa, OrderTerm::AcOmega],
    )
}

/// Identifiers usable inside terms.
pub fn builtin(name: &str) -> Option<OrderTerm> {
    match name {
        "L0" => Some(l0()),
        "L1" => Some(l_stage(1)),
        "L2" => Some(l_stage(2)),
        "L3" => Some(l_stage(3)),
        "L" => Some(l_limit()),
        "non_fac" => Some(non_fac_witness()),
        _ => catalog()
            .into_iter()
            .chain(linear_catalog())
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t),
    }
}

fn p(s: &str) -> OrderTerm {
    crate::parse::parse(s).unwrap_or_else(|e| panic!("catalog entry `{s}`: {e}"))
}

fn named(entries: &[(&'static str, &str)]) -> Vec<(&'static str, OrderTerm)> {
    entries.iter().map(|(n, s)| (*n, p(s))).collect()
}

/// Twenty terms mixing leaves, the `L` family, nonlinear sums and finite
/// posets.
pub fn catalog() -> Vec<(&'static str, OrderTerm)> {
    named(&[
        ("omega", "w"),
        ("omega_star", "w*"),
        ("kappa", "k"),
        ("kappa_star", "k*"),
        ("rationals", "Q"),
        ("q_kappa", "Qk"),
        ("L0", "L0"),
        ("L1", "L1"),
        ("L2", "L2"),
        ("L3", "L3"),
        ("L", "L"),
        ("non_fac", "lsum(ac(2); k, ac(w))"),
        ("q_of_kappa", "sum(Q, k)"),
        ("kappa_kappa_star", "sum(k, k*)"),
        ("omega_pairs", "sum(w, ac(2))"),
        ("ordinal", "ord(w^2*3+w+4)"),
        ("v_family", "lsum(fin(3; 0<1, 0<2); w, k*, Q)"),
        ("n_poset", "fin(4; 0<2, 1<2, 1<3)"),
        ("antichain3", "ac(3)"),
        ("pairs_of_zigzag", "sum(ac(2), sum(k, k*))"),
    ])
}

/// Twenty linear terms, scattered and not.
pub fn linear_catalog() -> Vec<(&'static str, OrderTerm)> {
    named(&[
        ("omega", "w"),
        ("omega_star", "w*"),
        ("kappa", "k"),
        ("kappa_star", "k*"),
        ("rationals", "Q"),
        ("q_kappa", "Qk"),
        ("omega_squared", "ord(w^2)"),
        ("ordinal", "ord(w^2*3+w+4)"),
        ("omega_by_omega", "sum(w, w)"),
        ("omega_by_omega_star", "sum(w*, w)"),
        ("omega_star_by_omega", "sum(w, w*)"),
        ("q_of_kappa", "sum(Q, k)"),
        ("kappa_kappa_star", "sum(k, k*)"),
        ("L0", "L0"),
        ("L1", "L1"),
        ("L2", "L2"),
        ("L", "L"),
        ("omega_of_successor", "sum(w, ord(w+1))"),
        ("omega_cubed_star", "inv(ord(w^3))"),
        ("q_of_pairs", "sum(Q, 2)"),
    ])
}

/// Ten explicit finite posets.
pub fn finite_catalog() -> Vec<(&'static str, FinPoset)> {
    let f =
        |n: usize, pairs: &[(usize, usize)]| FinPoset::from_relations(n, pairs).expect("acyclic");
    vec![
        ("empty", FinPoset::empty()),
        ("point", FinPoset::chain(1)),
        ("chain4", FinPoset::chain(4)),
        ("antichain4", FinPoset::antichain(4)),
        ("vee", f(3, &[(0, 1), (0, 2)])),
        ("wedge", f(3, &[(0, 2), (1, 2)])),
        ("n", f(4, &[(0, 2), (1, 2), (1, 3)])),
        ("diamond", f(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])),
        ("two_plus_two", f(4, &[(0, 1), (2, 3)])),
        (
            "crown",
            f(6, &[(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)]),
        ),
    ]
}
