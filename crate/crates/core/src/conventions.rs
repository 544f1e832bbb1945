//! The conventions every computation in this crate is pinned to, printed
//! by the command line driver with `--ledger`.

pub const LEDGER: &str = "\
variable          v with q = v^2; all functions are exact in v^(1/N)
c-function        c_a = (1 + theta_-a / q_a^-)(1 - theta_-a / q_a^+) / (1 - theta_-2a), q^+- = v^(k+-)
mu                mu = d / q(w0) * prod over all roots of 1 / c_a
q(w0)             longest-element: v^(sum over positive roots of k+ + k-) (default);
                  poincare-sum: sum over W of q(w), available per algebra
iwahori spec      k+ = 2, k- = 0 on every root; d = 1/Vol(I), Vol(I) = v^-n (v^2 - 1)^n;
                  omega = [X : Z R] unless overridden
PGL_(m+1)         A_m with the root lattice as X and omega = m + 1
residual test     poles: alpha(r) = q_a^+ or -q_a^-; zeros: alpha(r) = +-1; roots constant on the coset
m_r               regularized residue of prod 1/c_a, excluding d / q(w0); zero when not residual
formal degree     d_H * d / (q(w0) |Omega|) * m_r; compared through magnitudes
regularization    dropped factors are written canonically, so residues carry a sign ambiguity
                  and transfer constants D are reported as |D|
grading           alpha(Fr) = zeta^(alpha . s) v^(alpha . h); a residual point r gives s = r.s, h = r.y
gamma(0)          L(1) / L(0) with the vanishing factors of L(0) dropped; epsilon has conductor 0
                  and its root number is dropped
relative gamma    roots outside the Levi only, no Cartan part; multiplicities may be negative
transfer maps     theta_x -> x(base) theta_(A x); equivalence under w o Psi for target Weyl elements
Kac marks         node 0 carries minus the highest root with mark 1, then highest-root coefficients
";
