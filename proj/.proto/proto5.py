import numpy as np
from proto1 import mode_op, gen_S, gen_F

def word_matrix(word, n, N):
    M = np.eye(N**n, dtype=complex)
    for t in word:
        if t == 'F': M = M @ gen_F(n, N)
        else: M = M @ gen_S(n, N, np.array([[int(t[1:])]]))
    return M

def chi_fejer_coeffs(m, r):
    # chi = 1_{[-r,r]} * Fejer_m  -> hat chi_k = (1-|k|/(m+1)) sin(2 pi k r)/(pi k), hat chi_0 = 2r
    c = {0: 2*r}
    for k in range(1, m+1):
        c[k] = (1 - k/(m+1)) * np.sin(2*np.pi*k*r)/(np.pi*k)
        c[-k] = c[k]
    return c

def chi_eval(c, t):
    return sum(v*np.exp(2j*np.pi*k*t) for k, v in c.items()).real

def op1_from_chi(N, c):
    # Op_1( chi(x) chi(xi) )
    Op = np.zeros((N, N), complex)
    for kx, cx in c.items():
        for kxi, cxi in c.items():
            y, eta = -kxi, kx
            Op += cx*cxi * mode_op(1, N, np.array([y, eta]))
    return Op

D = np.array([[0,1],[1,2]])
for (m, r) in [(8, 0.125), (8, 0.1875), (8, 0.22)]:
    c = chi_fejer_coeffs(m, r)
    vals = [chi_eval(c, t) for t in (0, 0.0625, 0.125, 0.1875, 0.25, 0.375, 0.5)]
    print(f"m={m} r={r}: chi at 0,1/16,...: " + " ".join(f"{v:.4f}" for v in vals), flush=True)
    for N in [20, 28, 36]:
        O1 = op1_from_chi(N, c)
        B = np.eye(N*N) - np.kron(O1, O1)
        M1 = gen_S(2, N, D) @ gen_F(2, N)
        Mcat = word_matrix(['F','S-2','F','S-2','F'], 1, N)
        M2 = np.kron(Mcat, gen_F(1, N))
        r1 = np.abs(np.linalg.eigvals(B@M1)).max()
        r2 = np.abs(np.linalg.eigvals(B@M2)).max()
        print(f"  N={N}: radius A1={r1:.5f} A2={r2:.5f}", flush=True)
