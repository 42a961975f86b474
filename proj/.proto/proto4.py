import numpy as np
from proto1 import mode_op, gen_S, gen_F

# tensor identity check
N = 5
w1 = np.array([1, 2]); w2 = np.array([-1, 3])
lhs = mode_op(2, N, np.array([w1[0], w2[0], w1[1], w2[1]]))
rhs = np.kron(mode_op(1, N, w1), mode_op(1, N, w2))
print("mode kron identity:", np.abs(lhs - rhs).max())

def chi_coeffs(p=8):
    G = 64
    t = 2*np.pi*np.arange(G)/G
    v = ((1+np.cos(t))/2)**p
    d = np.fft.fft(v)/G
    return {k: d[k % G].real for k in range(-p, p+1)}

def op1_chichi(N, p=8):
    chi = chi_coeffs(p)
    dim = N
    Op = np.zeros((dim, dim), complex)
    for kx in range(-p, p+1):
        for kxi in range(-p, p+1):
            c = chi[kx]*chi[kxi]
            if abs(c) < 1e-15: continue
            y, eta = -kxi, kx
            Op += c * mode_op(1, N, np.array([y, eta]))
    return Op

def word_matrix(word, n, N):
    M = np.eye(N**n, dtype=complex)
    for t in word:
        if t == 'F': M = M @ gen_F(n, N)
        else: M = M @ gen_S(n, N, np.array([[int(t[1:])]]))
    return M

D = np.array([[0,1],[1,2]])
for N in [16, 20, 24, 28]:
    Obump = np.kron(op1_chichi(N), op1_chichi(N))
    B = np.eye(N*N) - Obump
    M1 = gen_S(2, N, D) @ gen_F(2, N)
    Mcat = word_matrix(['F','S-2','F','S-2','F'], 1, N)
    M2 = np.kron(Mcat, gen_F(1, N))
    r1 = np.abs(np.linalg.eigvals(B@M1)).max()
    r2 = np.abs(np.linalg.eigvals(B@M2)).max()
    nb = np.linalg.norm(B, 2)
    print(f"N={N}: |Op(b)|={nb:.5f} radius A1={r1:.5f} A2={r2:.5f}", flush=True)
