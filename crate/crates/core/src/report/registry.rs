//! Every check id the pipeline can emit, in report order, with the identity
//! it certifies.

pub const REGISTRY: &[(&str, &str)] = &[
    // Frobenius system
    ("frobenius.bimodule-map", "E(n m n') = n E(m) n' for n, n' in N, m in M"),
    ("frobenius.dual-bases", "Σ E(m x_i) y_i = m = Σ x_i E(y_i m) solved in M ⊗_N M"),
    ("frobenius.supplied-dual-bases", "supplied Σ x_i ⊗ y_i satisfies Σ E(m x_i) y_i = m = Σ x_i E(y_i m)"),
    ("frobenius.index-scalar", "Σ x_i y_i = λ⁻¹·1 with λ⁻¹ a nonzero scalar"),
    ("frobenius.normalized", "E(1) = 1, after E ↦ μ⁻¹E, x_i ↦ μx_i when E(1) = μ·1"),
    ("frobenius.nakayama", "E(q(c) m) = E(m c) defines an automorphism q of C_M(N)"),
    // Jones tower
    ("tower.basic-construction", "M₁ = M ⊗_N M with (a ⊗ b)(c ⊗ d) = a E(bc) ⊗ d, E_M(a ⊗ b) = λab"),
    ("tower.endo-iso", "End(M_N) ≅ M₁ via f ↦ Σ f(x_i) ⊗ y_i"),
    ("tower.level-two", "M₂ = M₁ ⊗_M M₁ with e₂ = 1 ⊗ 1 and E_{M₁}"),
    ("tower.braid", "e₁e₂e₁ = λe₁, e₂e₁e₂ = λe₂, E_M(e₁) = E_{M₁}(e₂) = λ, F(e₂) = λ, F(e₂e₁) = λ²"),
    ("tower.pimsner-popa", "λ⁻¹e E(e x) = e x and λ⁻¹E(x e) e = x e for (e₁, E_M) on M₁ and (e₂, E_{M₁}) on M₂"),
    ("tower.m2-triple-tensor", "M₂ ≅ M ⊗_N M ⊗_N M via m ⊗ m' ⊗ m'' ↦ (m ⊗ m') ⊗_M (1 ⊗ m'')"),
    ("tower.cyclic-generation", "M₁ = span M e₁ M"),
    // Depth two
    ("depth2.centralizers", "A = C_{M₁}(N), B = C_{M₂}(M), C = C_{M₂}(N) with C_M(N) ⊆ A"),
    ("depth2.level1", "z_i, w_i in A with Σ E_M(x z_i) w_i = x on M₁ and E_M(w_i z_j) = δ_ij"),
    ("depth2.level2", "u_j, v_j in B with Σ E_{M₁}(y u_j) v_j = y on M₂ and E_{M₁}(v_j u_k) = δ_jk"),
    ("depth2.brute-force-agreement", "an independent dense solve of the orthogonal dual-bases system gives the same verdict at both levels"),
    ("depth2.c-structure", "C = A ⊗ B = B ⊗ A = span A e₂ A, e₁ c e₁ = e₁ E_{M₁}(c), u_i e₁ v_j matrix units, λ⁻¹ = n"),
    ("depth2.expectations", "E_B(c) = Σ F(c u_j) v_j and E_A = E_{M₁}|_C are conditional expectations with F∘E_B = F"),
    ("depth2.f-faithful", "F = E_M ∘ E_{M₁} restricted to C has a nondegenerate trace form F(c c')"),
    ("depth2.nakayama", "q|_A = q_A, q|_B = q_B, E_{M₁}∘q = q_A∘E_{M₁}, q(e₁) = e₁, q(e₂) = e₂"),
    // Hopf reconstruction
    ("hopf.pairing", "⟨a, b⟩ = λ⁻²F(a e₂ e₁ b) is nondegenerate on A × B"),
    ("hopf.antipode", "S = Φ⁻¹Ψ with Φ(b) = E_{M₁}(e₂e₁b), Ψ(b) = E_{M₁}(be₁e₂) is defined on B"),
    ("hopf.b.coassociativity", "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ on B"),
    ("hopf.b.counit", "(ε ⊗ id)Δ = id = (id ⊗ ε)Δ on B"),
    ("hopf.b.delta-multiplicative", "Δ(bb') = Δ(b)Δ(b') on B"),
    ("hopf.b.delta-unital", "Δ(1) = 1 ⊗ 1 on B"),
    ("hopf.b.eps-multiplicative", "ε(bb') = ε(b)ε(b'), ε(1) = 1 on B"),
    ("hopf.b.antipode-left", "S(b₍₁₎)b₍₂₎ = ε(b)1 on B"),
    ("hopf.b.antipode-right", "b₍₁₎S(b₍₂₎) = ε(b)1 on B"),
    ("hopf.b.antipode-anti-coalgebra", "Δ(S b) = S(b₍₂₎) ⊗ S(b₍₁₎) on B"),
    ("hopf.b.antipode-bijective", "S is bijective on B"),
    ("hopf.tower.dim-a-eq-dim-b", "dim A = dim B"),
    ("hopf.tower.phi-bijective", "Φ(b) = E_{M₁}(e₂e₁b) is a bijection B -> A"),
    ("hopf.tower.pairing-one-e2", "⟨1, e₂⟩ = 1"),
    ("hopf.tower.coalgebra-pairing", "⟨a a', b⟩ = ⟨a, b₍₁₎⟩⟨a', b₍₂₎⟩"),
    ("hopf.tower.algebra-pairing", "⟨a, b b'⟩ = ⟨a₍₁₎, b⟩⟨a₍₂₎, b'⟩"),
    ("hopf.tower.basis-independence", "Δ(b) = Σ⟨a_i a_j, b⟩ bⁱ ⊗ bʲ does not depend on the basis of A"),
    ("hopf.tower.eps-matches-f", "ε(b) = ⟨1, b⟩ = λ⁻¹F(b e₂)"),
    ("hopf.tower.antipode-remark", "E_{M₁}(b x e₂) = E_{M₁}(e₂ x S(b)) for b in B, x in M₁"),
    ("hopf.tower.s-fixes-e2", "S(e₂) = e₂"),
    ("hopf.tower.s-squared-q-inverse", "S² q_B = id on B"),
    ("hopf.tower.s-involution", "S² = id when q_B = id"),
    ("hopf.tower.exchange", "y b = λ⁻¹ b₍₂₎ E_{M₁}(e₂ y b₍₁₎) for y in M₁, b in B"),
    ("hopf.tower.action", "E_{M₁}(e₂ x y b) = λ⁻¹ E_{M₁}(e₂ x b₍₂₎) E_{M₁}(e₂ y b₍₁₎)"),
    ("hopf.tower.left-action", "E_{M₁}(b x y e₂) = λ⁻¹ E_{M₁}(b₍₁₎ x e₂) E_{M₁}(b₍₂₎ y e₂)"),
    ("hopf.tower.e2-central-in-b", "e₂ is central in B"),
    ("hopf.tower.e1-central-in-a", "e₁ is central in A"),
    ("hopf.tower.e2-integral", "e₂ b = ε(b) e₂ for b in B"),
    ("hopf.tower.e1-integral", "e₁ a = a e₁ = ε_A(a) e₁ for a in A"),
    ("hopf.tower.eps-a-e1", "ε_A(e₁) = ⟨e₁, 1⟩ = 1"),
    ("hopf.a.coassociativity", "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ on A"),
    ("hopf.a.counit", "(ε ⊗ id)Δ = id = (id ⊗ ε)Δ on A"),
    ("hopf.a.delta-multiplicative", "Δ(aa') = Δ(a)Δ(a') on A"),
    ("hopf.a.delta-unital", "Δ(1) = 1 ⊗ 1 on A"),
    ("hopf.a.eps-multiplicative", "ε(aa') = ε(a)ε(a'), ε(1) = 1 on A"),
    ("hopf.a.antipode-left", "S(a₍₁₎)a₍₂₎ = ε(a)1 on A"),
    ("hopf.a.antipode-right", "a₍₁₎S(a₍₂₎) = ε(a)1 on A"),
    ("hopf.a.antipode-anti-coalgebra", "Δ(S a) = S(a₍₂₎) ⊗ S(a₍₁₎) on A"),
    ("hopf.a.antipode-bijective", "S is bijective on A"),
    // Galois and smash products
    ("galois.b-action.unit-acts-trivially", "1_B ⊲ x = x on M₁"),
    ("galois.b-action.associative", "(bb') ⊲ x = b ⊲ (b' ⊲ x) on M₁"),
    ("galois.b-action.module-algebra", "b ⊲ (xy) = (b₍₁₎ ⊲ x)(b₍₂₎ ⊲ y) on M₁"),
    ("galois.b-action.unital", "b ⊲ 1 = ε(b)1 on M₁"),
    ("galois.b-action.outer-formula", "b ⊲ x = λ⁻¹E_{M₁}(b x e₂) = b₍₁₎ x S(b₍₂₎)"),
    ("galois.b-action.e2-acts-as-e-m", "e₂ ⊲ x = E_M(x) on M₁"),
    ("galois.b-action.invariants-are-m", "M₁^B = M"),
    ("galois.theta.smash-associative", "(x # b)(x' # b') = x(b₍₁₎ ⊲ x') # b₍₂₎b' is associative"),
    ("galois.theta.theta-m1-smash-b", "θ: M₁ # B -> M₂, x # b ↦ xb is an algebra isomorphism"),
    ("galois.theta.a-stable-under-b", "B ⊲ A ⊆ A"),
    ("galois.theta.theta-a-smash-b", "θ restricts to an algebra isomorphism A # B -> C"),
    ("galois.a-action.lands-in-m", "a ⊲ m = a₍₁₎ m S(a₍₂₎) computed in M₁ lies in M"),
    ("galois.a-action.unit-acts-trivially", "1_A ⊲ m = m on M"),
    ("galois.a-action.associative", "(aa') ⊲ m = a ⊲ (a' ⊲ m) on M"),
    ("galois.a-action.module-algebra", "a ⊲ (mm') = (a₍₁₎ ⊲ m)(a₍₂₎ ⊲ m') on M"),
    ("galois.a-action.unital", "a ⊲ 1 = ε(a)1 on M"),
    ("galois.a-action.e1-acts-as-e", "e₁ ⊲ m = E(m) on M"),
    ("galois.a-action.invariants-are-n", "M^A = N"),
    ("galois.cleft.coaction-algebra-map", "ρ(x) = Σ (b_j ⊲ x) ⊗ aʲ is an algebra map M₁ -> M₁ ⊗ A"),
    ("galois.cleft.coaction-coassociative", "(ρ ⊗ id)ρ = (id ⊗ Δ)ρ"),
    ("galois.cleft.coaction-counital", "(id ⊗ ε)ρ = id"),
    ("galois.cleft.iota-comodule-map", "ρ(a) = a₍₁₎ ⊗ a₍₂₎ for a in A ⊆ M₁"),
    ("galois.cleft.convolution-inverse", "ι has convolution inverse ι∘S"),
    ("galois.cleft.cocycle-trivial", "σ(a, a') = ι(a₍₁₎)ι(a'₍₁₎)ι⁻¹(a₍₂₎a'₍₂₎) = ε(a)ε(a')"),
    ("galois.cleft.m-smash-a-iso", "M # A -> M₁, m # a ↦ m a is an algebra isomorphism"),
    ("galois.galois-map", "β: M ⊗_N M -> M ⊗ B, m ⊗ m' ↦ m m'₍₀₎ ⊗ m'₍₁₎ is bijective with M^{co B} ⊇ N"),
    // Abstract pairing input
    ("pairing.nondegenerate", "the pairing matrix P = [⟨a_i, b_j⟩] is invertible"),
    ("pairing.b.coassociativity", "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ on B"),
    ("pairing.b.counit", "(ε ⊗ id)Δ = id = (id ⊗ ε)Δ on B"),
    ("pairing.b.delta-multiplicative", "Δ(bb') = Δ(b)Δ(b') on B"),
    ("pairing.b.delta-unital", "Δ(1) = 1 ⊗ 1 on B"),
    ("pairing.b.eps-multiplicative", "ε(bb') = ε(b)ε(b'), ε(1) = 1 on B"),
    ("pairing.b.antipode-left", "S(b₍₁₎)b₍₂₎ = ε(b)1 on B"),
    ("pairing.b.antipode-right", "b₍₁₎S(b₍₂₎) = ε(b)1 on B"),
    ("pairing.b.antipode-anti-coalgebra", "Δ(S b) = S(b₍₂₎) ⊗ S(b₍₁₎) on B"),
    ("pairing.b.antipode-bijective", "S is bijective on B"),
    ("pairing.coalgebra-pairing", "⟨a a', b⟩ = ⟨a, b₍₁₎⟩⟨a', b₍₂₎⟩"),
    ("pairing.algebra-pairing", "⟨a, b b'⟩ = ⟨a₍₁₎, b⟩⟨a₍₂₎, b'⟩"),
    ("pairing.basis-independence", "Δ(b) = Σ⟨a_i a_j, b⟩ bⁱ ⊗ bʲ does not depend on the basis of A"),
    ("pairing.a.coassociativity", "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ on A"),
    ("pairing.a.counit", "(ε ⊗ id)Δ = id = (id ⊗ ε)Δ on A"),
    ("pairing.a.delta-multiplicative", "Δ(aa') = Δ(a)Δ(a') on A"),
    ("pairing.a.delta-unital", "Δ(1) = 1 ⊗ 1 on A"),
    ("pairing.a.eps-multiplicative", "ε(aa') = ε(a)ε(a'), ε(1) = 1 on A"),
    ("pairing.a.antipode-left", "S(a₍₁₎)a₍₂₎ = ε(a)1 on A"),
    ("pairing.a.antipode-right", "a₍₁₎S(a₍₂₎) = ε(a)1 on A"),
    ("pairing.a.antipode-anti-coalgebra", "Δ(S a) = S(a₍₂₎) ⊗ S(a₍₁₎) on A"),
    ("pairing.a.antipode-bijective", "S is bijective on A"),
];

/// The anchor of a registered id.
pub fn anchor(id: &str) -> Option<&'static str> {
    REGISTRY.iter().find(|(k, _)| *k == id).map(|(_, a)| *a)
}

/// Registered ids starting with `prefix`, in registry order.
pub fn ids_with_prefix(prefix: &str) -> impl Iterator<Item = &'static str> + '_ {
    REGISTRY.iter().map(|(k, _)| *k).filter(move |k| k.starts_with(prefix))
}
