use divide_kh::frobenius::{basis_of, structure, transition, Element, LinearMap, MapName, Space, TName};

use MapName::*;
use Space::{A, B};
use TName::*;

fn s(name: MapName) -> LinearMap {
    structure(name).clone()
}

fn t(name: TName) -> LinearMap {
    transition(name).clone()
}

fn id(space: Space) -> LinearMap {
    LinearMap::identity(vec![space])
}

fn phi(space: Space) -> LinearMap {
    LinearMap::flip(space)
}

/// `outer ∘ inner`, panicking on a signature mismatch.
fn c(outer: &LinearMap, inner: &LinearMap) -> LinearMap {
    outer.after(inner).unwrap_or_else(|e| panic!("{e}"))
}

fn chain(maps: &[LinearMap]) -> LinearMap {
    let (last, rest) = maps.split_last().expect("nonempty");
    rest.iter().rev().fold(last.clone(), |acc, m| c(m, &acc))
}

fn tp(a: &LinearMap, b: &LinearMap) -> LinearMap {
    a.tensor(b)
}

/// Outcome of one identity: a label and whether it holds.
pub type Check = (String, bool);

fn same(out: &mut Vec<Check>, lhs: &LinearMap, rhs: &LinearMap) {
    out.push((format!("{} = {}", lhs.name, rhs.name), lhs.same_as(rhs)));
}

fn zero(out: &mut Vec<Check>, m: &LinearMap) {
    out.push((format!("{} = 0", m.name), m.is_zero()));
}

fn holds(out: &mut Vec<Check>, label: &str, ok: bool) {
    out.push((label.to_string(), ok));
}

fn algebra_a_is_commutative_associative_unital(out: &mut Vec<Check>) {
    same(out, &c(&s(Mu1), &phi(A)), &s(Mu1));
    same(out, &c(&s(Mu1), &tp(&s(Mu1), &id(A))), &c(&s(Mu1), &tp(&id(A), &s(Mu1))));
    same(out, &c(&s(Mu1), &tp(&s(Eta1), &id(A))), &id(A));
    same(out, &c(&s(Mu1), &tp(&id(A), &s(Eta1))), &id(A));
}

fn coalgebra_a_is_cocommutative_coassociative_counital(out: &mut Vec<Check>) {
    same(out, &c(&phi(A), &s(Delta1)), &s(Delta1));
    same(out, &c(&tp(&s(Delta1), &id(A)), &s(Delta1)), &c(&tp(&id(A), &s(Delta1)), &s(Delta1)));
    same(out, &c(&tp(&s(Eps1), &id(A)), &s(Delta1)), &id(A));
    same(out, &c(&tp(&id(A), &s(Eps1)), &s(Delta1)), &id(A));
}

fn frobenius_relation(out: &mut Vec<Check>) {
    let dm = c(&s(Delta1), &s(Mu1));
    same(out, &dm, &c(&tp(&s(Mu1), &id(A)), &tp(&id(A), &s(Delta1))));
    same(out, &dm, &c(&tp(&id(A), &s(Mu1)), &tp(&s(Delta1), &id(A))));
}

fn pairing_is_symmetric_nondegenerate_and_adjoins_product_and_coproduct(out: &mut Vec<Check>) {
    let beta = s(Beta1);
    same(out, &c(&beta, &phi(A)), &beta);
    // Gram matrix on (v-, v+) has determinant 1 mod 2
    let basis = basis_of(&[A]);
    let gram: Vec<Vec<bool>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| !beta.on_basis(&[x[0], y[0]]).is_zero()).collect())
        .collect();
    holds(out, "β1 nondegenerate", gram[0][0] & gram[1][1] ^ gram[0][1] & gram[1][0]);
    // β(μ(x⊗y), z) = Σ β(x, z1) β(y, z2) over δ(z) = Σ z1⊗z2
    let lhs = c(&beta, &tp(&s(Mu1), &id(A)));
    let rhs = chain(&[
        tp(&beta, &beta),
        tp(&tp(&id(A), &phi(A)), &id(A)),
        tp(&id(A), &tp(&id(A), &s(Delta1))),
    ]);
    same(out, &lhs, &rhs);
}

fn induced_structure_on_b(out: &mut Vec<Check>) {
    let mu_pair = c(&tp(&s(Mu1), &s(Mu1)), &tp(&tp(&id(A), &phi(A)), &id(A)));
    same(out, &s(Mu2), &chain(&[s(Pi), mu_pair, tp(&s(Iota), &s(Iota))]));
    let delta_pair = c(&tp(&tp(&id(A), &phi(A)), &id(A)), &tp(&s(Delta1), &s(Delta1)));
    same(out, &s(Delta2), &chain(&[tp(&s(Pi), &s(Pi)), delta_pair, s(Iota)]));
    same(out, &c(&s(Mu2), &tp(&s(Eta2), &id(B))), &id(B));
    same(out, &c(&tp(&s(Eps2), &id(B)), &s(Delta2)), &id(B));
}

fn transition_maps_are_their_algebraic_forms(out: &mut Vec<Check>) {
    same(out, &t(T1), &c(&s(Delta1), &s(Mu1)));
    same(out, &t(T4), &s(Delta2));
    same(out, &t(T5), &s(Mu2));
    same(out, &t(T6), &c(&s(Pi), &s(Delta1)));
    same(out, &t(T7), &s(Mu1));
    for name in TName::ALL {
        holds(out, &format!("deg {name} = {}", name.declared_degree()), t(name).degree() == Some(name.declared_degree()));
    }
    for name in MapName::ALL {
        if let Some(d) = s(name).degree() {
            holds(out, &format!("deg {name:?} = {}", name.declared_degree()), d == name.declared_degree());
        }
    }
}

fn symmetry_properties(out: &mut Vec<Check>) {
    same(out, &c(&t(T1), &phi(A)), &t(T1));
    same(out, &c(&phi(A), &t(T1)), &t(T1));
    same(out, &c(&phi(B), &t(T4)), &t(T4));
    same(out, &c(&t(T5), &phi(B)), &t(T5));
    same(out, &c(&t(T7), &phi(A)), &t(T7));
    same(out, &c(&tp(&id(A), &t(T2)), &phi(A)), &c(&tp(&phi(A), &id(B)), &tp(&id(A), &t(T2))));
    same(out, &c(&phi(A), &tp(&id(A), &t(T3))), &c(&tp(&id(A), &t(T3)), &tp(&phi(A), &id(B))));
}

fn two_double_points(out: &mut Vec<Check>) {
    same(out, 
        &c(&tp(&t(T1), &id(A)), &tp(&id(A), &t(T1))),
        &c(&tp(&id(A), &t(T1)), &tp(&t(T1), &id(A))),
    );
    same(out, &c(&tp(&t(T4), &id(B)), &t(T4)), &c(&tp(&id(B), &t(T4)), &t(T4)));
    same(out, &c(&tp(&id(A), &t(T2)), &t(T1)), &c(&tp(&t(T1), &id(B)), &tp(&id(A), &t(T2))));
    same(out, &c(&t(T5), &tp(&t(T5), &id(B))), &c(&t(T5), &tp(&id(B), &t(T5))));
    same(out, &c(&t(T1), &tp(&id(A), &t(T3))), &c(&tp(&id(A), &t(T3)), &tp(&t(T1), &id(B))));
    same(out, &c(&t(T4), &t(T5)), &c(&tp(&id(B), &t(T5)), &tp(&t(T4), &id(B))));

    zero(out, &c(&t(T1), &t(T1)));
    zero(out, &chain(&[tp(&id(A), &t(T3)), tp(&phi(A), &id(B)), tp(&id(A), &t(T2))]));

    let t2t2 = c(&tp(&t(T2), &id(B)), &t(T2));
    same(out, &t2t2, &chain(&[tp(&id(A), &phi(B)), tp(&t(T2), &id(B)), t(T2)]));
    same(out, &t2t2, &c(&tp(&id(A), &t(T4)), &t(T2)));

    let t3t3 = c(&t(T3), &tp(&t(T3), &id(B)));
    same(out, &t3t3, &chain(&[t(T3), tp(&t(T3), &id(B)), tp(&id(A), &phi(B))]));
    same(out, &t3t3, &c(&t(T3), &tp(&id(A), &t(T5))));

    let t2t3 = c(&t(T2), &t(T3));
    same(out, &t2t3, &chain(&[tp(&t(T3), &id(B)), tp(&id(A), &phi(B)), tp(&t(T2), &id(B))]));
    same(out, &t2t3, &c(&tp(&t(T3), &id(B)), &tp(&id(A), &t(T4))));
    same(out, &t2t3, &c(&tp(&id(A), &t(T5)), &tp(&t(T2), &id(B))));
}

fn double_point_and_tangent_point(out: &mut Vec<Check>) {
    same(out, &c(&t(T4), &t(T6)), &c(&tp(&t(T6), &id(B)), &t(T2)));
    same(out, &c(&t(T7), &tp(&id(A), &t(T3))), &c(&t(T3), &tp(&t(T7), &id(B))));
    same(out, &c(&t(T6), &t(T3)), &c(&t(T5), &tp(&t(T6), &id(B))));
    let t2t7 = c(&t(T2), &t(T7));
    same(out, &t2t7, &c(&tp(&t(T7), &id(B)), &tp(&id(A), &t(T2))));
    same(out, &t2t7, &c(&tp(&id(A), &t(T6)), &t(T1)));
    zero(out, &c(&t(T7), &t(T1)));
    zero(out, &c(&t(T3), &tp(&id(A), &t(T6))));
}

fn two_tangent_points(out: &mut Vec<Check>) {
    same(out, &c(&t(T1), &tp(&id(A), &t(T7))), &c(&tp(&id(A), &t(T7)), &tp(&t(T1), &id(A))));
}

fn section_identities(out: &mut Vec<Check>) {
    same(out, &c(&t(T3), &tp(&id(A), &s(Eta2))), &id(A));
    same(out, &c(&t(T5), &tp(&id(B), &s(Eta2))), &id(B));
    same(out, &c(&t(T7), &tp(&id(A), &s(Eta1))), &id(A));
    same(out, &c(&tp(&id(A), &s(Eps2)), &t(T2)), &id(A));
    same(out, &c(&tp(&id(B), &s(Eps2)), &t(T4)), &id(B));
    // the barred counit kills the w- factor created by T2
    zero(out, &c(&tp(&id(A), &s(Eps2Bar)), &t(T2)));
}

fn creation_and_destruction(out: &mut Vec<Check>) {
    use divide_kh::frobenius::Basis::*;
    holds(out, "η1(1) = v+", s(Eta1).apply(&Element::one()).unwrap() == Element::basis(vec![VPlus]));
    holds(out, "η2(1) = w+", s(Eta2).apply(&Element::one()).unwrap() == Element::basis(vec![WPlus]));
    holds(out, "ε1(v-) = 1", s(Eps1).apply(&Element::basis(vec![VMinus])).unwrap() == Element::one());
    holds(out, "ε2(w-) = 1", s(Eps2).apply(&Element::basis(vec![WMinus])).unwrap() == Element::one());
    holds(out, "ε1(v+) = 0", s(Eps1).apply(&Element::basis(vec![VPlus])).unwrap().is_zero());
    same(out, &s(Tau), &c(&s(Eta1), &s(Eps1)));
}

/// Every identity of the battery, evaluated on all basis inputs.
pub fn battery() -> Vec<Check> {
    let mut out = Vec::new();
    let groups: [fn(&mut Vec<Check>); 12] = [
        algebra_a_is_commutative_associative_unital,
        coalgebra_a_is_cocommutative_coassociative_counital,
        frobenius_relation,
        pairing_is_symmetric_nondegenerate_and_adjoins_product_and_coproduct,
        induced_structure_on_b,
        transition_maps_are_their_algebraic_forms,
        symmetry_properties,
        two_double_points,
        double_point_and_tangent_point,
        two_tangent_points,
        section_identities,
        creation_and_destruction,
    ];
    for g in groups {
        g(&mut out);
    }
    out
}
