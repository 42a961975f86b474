import numpy as np
from fractions import Fraction

# Conventions under test, n=1 mostly.
# z=(x,xi), w=(y,eta); sigma(z,w) = <xi,y> - <x,eta>.
# H_N(theta) basis e^theta_j, j in Z_N^n.
# Mode operator: Op_{N,theta}(e^{2pi i sigma(w,.)}) e_j
#   = exp(2pi i [ <eta, j - theta_x>/N + <y,eta>/(2N) + <theta_xi, l> ]) e_{(j+y) mod N}
# where l = (j + y - ((j+y) mod N))/N.

def sigma(z, w):
    n = len(z)//2
    return np.dot(z[n:], w[:n]) - np.dot(z[:n], w[n:])

def mode_op(n, N, w, theta=None):
    if theta is None: theta = np.zeros(2*n)
    tx, txi = theta[:n], theta[n:]
    y, eta = np.array(w[:n]), np.array(w[n:])
    dim = N**n
    M = np.zeros((dim, dim), complex)
    for jf in range(dim):
        j = np.array(np.unravel_index(jf, (N,)*n))
        jy = j + y
        r = jy % N
        l = (jy - r)//N
        ph = (np.dot(eta, j - tx)/N + np.dot(y, eta)/(2*N) + np.dot(txi, l))
        rf = int(np.ravel_multi_index(tuple(r), (N,)*n))
        M[rf, jf] = np.exp(2j*np.pi*ph)
    return M

def gen_S(n, N, B):
    dim = N**n
    M = np.zeros((dim, dim), complex)
    for jf in range(dim):
        j = np.array(np.unravel_index(jf, (N,)*n))
        M[jf, jf] = np.exp(1j*np.pi/N*np.dot(B@j, j))
    return M

def gen_L(n, N, E):
    dim = N**n
    Einv = np.linalg.inv(E)
    Einv = np.rint(Einv).astype(int)
    M = np.zeros((dim, dim), complex)
    # (Mf)_j = f_{E^{-1} j}  => M e_k = sum_j [E^{-1} j == k mod N] e_j ... careful:
    # column k: (M e_k)_j = (e_k)_{E^{-1}j} = 1 iff E^{-1} j = k mod N iff j = E k mod N
    E = np.array(E)
    for kf in range(dim):
        k = np.array(np.unravel_index(kf, (N,)*n))
        j = (E@k) % N
        jf = int(np.ravel_multi_index(tuple(j), (N,)*n))
        M[jf, kf] = 1.0
    return M

def gen_F(n, N):
    dim = N**n
    M = np.zeros((dim, dim), complex)
    for jf in range(dim):
        j = np.array(np.unravel_index(jf, (N,)*n))
        for kf in range(dim):
            k = np.array(np.unravel_index(kf, (N,)*n))
            M[jf, kf] = N**(-n/2)*np.exp(-2j*np.pi/N*np.dot(j, k))
    return M

def J_mat(n):
    J = np.zeros((2*n, 2*n), int)
    J[:n, n:] = -np.eye(n, dtype=int)   # sigma(z,w) = z^T J w with J = [[0,-I],[I,0]]
    J[n:, :n] = np.eye(n, dtype=int)
    return J

# check sigma via J: sigma(z,w) = <xi,y> - <x,eta> = z^T J w ?
z = np.array([1.,2.,3.,4.]); w = np.array([5.,6.,7.,8.])  # n=2: z=(x1,x2,xi1,xi2)
n2 = 2
print("sigma direct:", np.dot(z[n2:], w[:n2]) - np.dot(z[:n2], w[n2:]), " via J:", z@J_mat(2)@w)

# --- Egorov test for generators, n=1, N=6 ---
n, N = 1, 6
def egorov_residual(M, A, n, N):
    Ai = np.rint(np.linalg.inv(A)).astype(int)
    worst = 0
    for wy in range(-3, 4):
        for we in range(-3, 4):
            wv = np.array([wy, we])
            lhs = np.linalg.inv(M) @ mode_op(n, N, wv) @ M
            rhs = mode_op(n, N, Ai@wv)
            worst = max(worst, np.abs(lhs-rhs).max())
    return worst

B = np.array([[1]])
A_S = np.array([[1,0],[1,1]])   # S_B : (x,xi) -> (x, Bx+xi)
MS = gen_S(n, N, B)
print("S_B egorov:", egorov_residual(MS, A_S, n, N))

A_F = np.array([[0,1],[-1,0]])  # F: (x,xi) -> (xi, -x)
MF = gen_F(n, N)
print("F egorov:", egorov_residual(MF, A_F, n, N))
print("F^4 = I:", np.abs(np.linalg.matrix_power(MF,4)-np.eye(N)).max())

A_L = np.array([[-1,0],[0,-1]])  # L_E with E=[-1]
ML = gen_L(n, N, np.array([[-1]]))
print("L_{-1} egorov:", egorov_residual(ML, A_L, n, N))

# Heisenberg relations for translations: U_v = mode_op(N*v), v in (1/N)Z^2
v = np.array([1, 0]); vp = np.array([0, 1])   # N*v
Uv, Uvp = mode_op(n, N, v), mode_op(n, N, vp)
s = sigma(np.array(v)/N, np.array(vp)/N)
lhs = Uv@Uvp
rhs = np.exp(1j*np.pi*N*s) * mode_op(n, N, v+vp)
print("U_w product rel:", np.abs(lhs-rhs).max())
comm = np.exp(2j*np.pi*N*s) * Uvp@Uv
print("U_w commutator rel:", np.abs(lhs-comm).max())

# Wigner pairing, n=1, N=5, theta=0, random f, random trig a with W<=3
rng = np.random.default_rng(0)
N = 5
f = rng.normal(size=N) + 1j*rng.normal(size=N)
W = np.zeros((2*N, 2*N), complex)
for p in range(2*N):
    for q in range(2*N):
        s_ = 0
        for j in range(N):
            s_ += np.exp(1j*np.pi/N*(p-2*j)*q) * f[j] * np.conj(f[(p-j) % N])
        W[p, q] = (2*N)*s_
# pairing <Op(a)f,f> = (2N)^-2 sum a(p/2N, q/2N) W_pq
def pair_via_W(coeffs):
    tot = 0
    for (wy, we), c in coeffs.items():
        for p in range(2*N):
            for q in range(2*N):
                x, xi = p/(2*N), q/(2*N)
                tot += c*np.exp(2j*np.pi*(we*x - wy*xi)) * W[p, q]
    return tot/(2*N)**2
coeffs = {}
for wy in range(-3, 4):
    for we in range(-3, 4):
        coeffs[(wy, we)] = rng.normal() + 1j*rng.normal()
Op = sum(c*mode_op(1, N, np.array([wy, we])) for (wy, we), c in coeffs.items())
direct = np.vdot(f, Op@f)   # <Op f, f> = f^* (Op f): np.vdot(a,b)=conj(a).b -> <b,a>... careful
# inner product <u,v> = sum u conj(v). <Op f, f> = sum (Opf)_j conj(f_j) = np.vdot(f, Op@f)
print("wigner pairing diff:", abs(pair_via_W(coeffs) - direct))

# grid quadratic form (e:Op-h-paired)
def grid_form(avals, f):  # avals[k1,l1] = a(k1/2N, l1/2N) ... full 2N x 2N grid; n=1
    tot = 0
    for j in range(N):
        for k in range(2*N):
            for l in range(2*N):
                tot += np.exp(1j*np.pi/N*k*l)*avals[(2*j+k) % (2*N), l]*f[j]*np.conj(f[(j+k) % N])
    return tot/(2*N)
av = np.zeros((2*N, 2*N), complex)
for p in range(2*N):
    for q in range(2*N):
        av[p, q] = sum(c*np.exp(2j*np.pi*(we*p/(2*N) - wy*q/(2*N))) for (wy, we), c in coeffs.items())
print("grid form diff:", abs(grid_form(av, f) - direct))
