"""Reference values frozen into the unit tests.

Computed with numpy/scipy and cvxpy (Clarabel), independently of the C++
solvers. Rerun with `python3 tests/oracle/freeze_values.py`.
"""
import cvxpy as cp
import numpy as np
from scipy.linalg import sqrtm

np.set_printoptions(precision=12)

G = np.array([[1, 2j, 0, 1],
              [0, 1, 1 - 1j, 2],
              [1, 0, 3, 1j],
              [2, 1, 0, 1]], dtype=complex)
RHO = G @ G.conj().T
RHO /= np.trace(RHO).real


def ptrace_a(m, da, db):
    return np.einsum("ijik->jk", m.reshape(da, db, da, db))


def ptrace_b(m, da, db):
    return np.einsum("ijkj->ik", m.reshape(da, db, da, db))


def vn(m):
    w = np.linalg.eigvalsh(m)
    w = w[w > 1e-12]
    return float(-(w * np.log2(w)).sum())


def werner(d, p):
    phi = np.zeros(d * d, dtype=complex)
    for j in range(d):
        phi[j * d + j] = 1 / np.sqrt(d)
    return p * np.outer(phi, phi.conj()) + (1 - p) * np.eye(d * d) / d**2


def fourier(d):
    return np.array([[np.exp(2j * np.pi * j * k / d) / np.sqrt(d) for k in range(d)] for j in range(d)])


def measure_a(m, basis, da, db):
    out = np.zeros_like(m)
    for j in range(da):
        p = np.outer(basis[:, j], basis[:, j].conj())
        P = np.kron(p, np.eye(db))
        out += P @ m @ P
    return out


def hmin_cond(m, da, db):
    X = cp.Variable((db, db), hermitian=True)
    cons = [cp.kron(np.eye(da), X) - m >> 0]
    prob = cp.Problem(cp.Minimize(cp.real(cp.trace(X))), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)
    return float(-np.log2(prob.value))


def fidelity(a, b):
    s = sqrtm(a)
    return float(np.real(np.trace(sqrtm(s @ b @ s))))


def smooth_hmax(spectrum, eps):
    s = np.asarray(spectrum, dtype=float)
    a = np.sqrt(s)
    b = np.sqrt(max(0.0, 1 - s.sum()))
    x = cp.Variable(len(s), nonneg=True)
    t = cp.Variable(nonneg=True)
    cons = [cp.norm(cp.hstack([x, t])) <= 1, a @ x + b * t >= np.sqrt(1 - eps**2)]
    prob = cp.Problem(cp.Minimize(cp.sum(x)), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)
    return float(2 * np.log2(prob.value))


def main():
    comp = np.eye(2)
    f2 = fourier(2)
    rho_b = ptrace_a(RHO, 2, 2)
    w = werner(2, 0.3)
    print("H(AB)           ", repr(vn(RHO)))
    print("H(A|B)          ", repr(vn(RHO) - vn(rho_b)))
    print("H(R|B) comp     ", repr(vn(measure_a(RHO, comp, 2, 2)) - vn(rho_b)))
    print("H(S|B) fourier  ", repr(vn(measure_a(RHO, f2, 2, 2)) - vn(rho_b)))
    ev = np.linalg.eigvalsh(RHO)
    print("eigenvalues     ", ev)
    print("H_min(AB)       ", repr(float(-np.log2(ev.max()))))
    print("H_max(AB)       ", repr(float(2 * np.log2(np.sqrt(np.clip(ev, 0, None)).sum()))))
    print("H_-inf(AB)      ", repr(float(-np.log2(ev.min()))))
    print("H_min(A|B) SDP  ", repr(hmin_cond(RHO, 2, 2)))
    print("H_min(A|B) W0.5 ", repr(hmin_cond(werner(2, 0.5), 2, 2)))
    print("H_min(A|B) W3   ", repr(hmin_cond(werner(3, 0.7), 3, 3)))
    print("F(rho, W0.3)    ", repr(fidelity(RHO, w)))
    print("T(rho, W0.3)    ", repr(float(0.5 * np.abs(np.linalg.eigvalsh(RHO - w)).sum())))
    for spec, eps in [((0.5, 0.3, 0.2), 0.1), ((0.7, 0.2, 0.1), 0.05), ((0.4, 0.3, 0.2, 0.1), 0.2),
                      ((0.6, 0.3), 0.1)]:
        print("H_max^eps", spec, eps, repr(smooth_hmax(spec, eps)))


if __name__ == "__main__":
    main()
