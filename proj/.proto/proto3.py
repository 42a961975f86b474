import numpy as np
from proto1 import mode_op, gen_S, gen_L, gen_F

# n=2 examples
A1 = np.array([[0,0,1,0],[0,0,0,1],[-1,0,0,1],[0,-1,1,2]])   # irreducible char poly
CAT = np.array([[2,3],[1,2]])
F2 = np.array([[0,1],[-1,0]])
def interleave(B, C):
    # block_diag in (x1,xi1),(x2,xi2) pairs -> z=(x1,x2,xi1,xi2) ordering
    A = np.zeros((4,4), dtype=int)
    A[np.ix_([0,2],[0,2])] = B
    A[np.ix_([1,3],[1,3])] = C
    return A
A2 = interleave(CAT, F2)
print("A2:"); print(A2)

def egorov_residual_n2(M, A, N, K=2):
    Ai = np.rint(np.linalg.inv(A)).astype(int)
    worst = 0
    rng = range(-K, K+1)
    for w in [(a,b,c,d) for a in rng for b in rng for c in rng for d in rng][:100]:
        wv = np.array(w)
        lhs = np.conj(M.T) @ mode_op(2, N, wv) @ M
        rhs = mode_op(2, N, Ai @ wv)
        worst = max(worst, np.abs(lhs - rhs).max())
    return worst

N = 8
# A1 = S_D F with D=[[0,1],[1,2]]
D = np.array([[0,1],[1,2]])
SD = np.array([[1,0,0,0],[0,1,0,0],[0,1,1,0],[1,2,0,1]])  # [[I,0],[D,I]] in z=(x,xi) order
F4 = np.block([[np.zeros((2,2),int), np.eye(2,dtype=int)],[-np.eye(2,dtype=int), np.zeros((2,2),int)]])
print("S_D F == A1:", (SD@F4 == A1).all())
M1 = gen_S(2, N, D) @ gen_F(2, N)
print("A1 word egorov:", egorov_residual_n2(M1, A1, N))

# A2 via tensor product of n=1 propagators
def word_matrix(word, n, N):
    M = np.eye(N**n, dtype=complex)
    for t in word:
        if t == 'F': M = M @ gen_F(n, N)
        else: M = M @ gen_S(n, N, np.array([[int(t[1:])]]))
    return M
Mcat = word_matrix(['F','S-2','F','S-2','F'], 1, N)
MF = gen_F(1, N)
M2 = np.kron(Mcat, MF)
print("A2 kron egorov:", egorov_residual_n2(M2, A2, N))

# ---- damped: b = 1 - prod_i ((1+cos 2pi z_i)/2)^p ----
def bump_vals(z, p=8):
    return np.prod(((1+np.cos(2*np.pi*z))/2)**p)

def op_of_symbol_n2(N, func, deg):
    # fourier coefficients via FFT on fine grid, indices |w|_inf <= deg
    G = 4*deg + 4
    grid = np.arange(G)/G
    vals = np.zeros((G,G,G,G))
    for i1,x1 in enumerate(grid):
        for i2,x2 in enumerate(grid):
            for i3,s1 in enumerate(grid):
                for i4,s2 in enumerate(grid):
                    vals[i1,i2,i3,i4] = func(np.array([x1,x2,s1,s2]))
    C = np.fft.fftn(vals)/G**4
    Op = np.zeros((N**2, N**2), complex)
    for w1 in range(-deg, deg+1):
        for w2 in range(-deg, deg+1):
            for w3 in range(-deg, deg+1):
                for w4 in range(-deg, deg+1):
                    # a(z) = sum c_idx e^{2pi i <k, z>} with k=(k_x1,k_x2,k_xi1,k_xi2) from FFT
                    # mode e^{2pi i sigma(w,z)} = e^{2pi i (<eta,x> - <y,xi>)}  => k_x = eta, k_xi = -y
                    # so w=(y,eta) corresponds to k=(eta, -y): coefficient index
                    eta = np.array([w1,w2]); y = np.array([w3,w4])
                    k = np.concatenate([eta, -y])
                    c = C[tuple(k % G)]
                    if abs(c) > 1e-14:
                        Op += c * mode_op(2, N, np.concatenate([y, eta]))
    return Op

# cheaper: exploit product structure: bump = prod chi(z_i); chi has cos-poly coeffs
from numpy.polynomial import polynomial as P
def chi_coeffs(p=8):
    # ((1+cos t)/2)^p = sum_k c_k cos(k t) -> complex exp coeffs d_k = d_{-k}
    # use fft on 64 samples
    G = 64
    t = 2*np.pi*np.arange(G)/G
    v = ((1+np.cos(t))/2)**p
    d = np.fft.fft(v)/G
    return {k: d[k % G].real for k in range(-p, p+1)}
chi = chi_coeffs(8)
print("chi coeffs sum:", sum(chi.values()), "chi(0)=", ((1+1)/2)**8)

def damped_radius(Mprop, N, nn=2, p=8):
    chi = chi_coeffs(p)
    dim = N**nn
    Op = np.zeros((dim, dim), complex)
    # bump(z) = prod_i chi(z_i) over all 2n coords; z=(x1,x2,xi1,xi2)
    # mode: e^{2pi i <k,z>} with k=(kx, kxi) corresponds to w=(y,eta)=(-kxi, kx)
    for kx1 in range(-p, p+1):
        for kx2 in range(-p, p+1):
            for kxi1 in range(-p, p+1):
                for kxi2 in range(-p, p+1):
                    c = chi[kx1]*chi[kx2]*chi[kxi1]*chi[kxi2]
                    if abs(c) < 1e-13: continue
                    y = np.array([-kxi1, -kxi2]); eta = np.array([kx1, kx2])
                    Op += c * mode_op(2, N, np.concatenate([y, eta]))
    B = np.eye(dim) - Op
    ev = np.linalg.eigvals(B @ Mprop)
    return np.abs(ev).max()

for N in [8, 12]:
    M1 = gen_S(2, N, D) @ gen_F(2, N)
    Mcat = word_matrix(['F','S-2','F','S-2','F'], 1, N)
    M2 = np.kron(Mcat, gen_F(1, N))
    r1 = damped_radius(M1, N)
    r2 = damped_radius(M2, N)
    print(f"N={N}: radius A1={r1:.5f} A2={r2:.5f}")
