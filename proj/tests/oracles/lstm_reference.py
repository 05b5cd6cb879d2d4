# Independent high-precision evaluation of a 2-input, 2-unit LSTM over a
# 3-step sequence. Used to freeze the expected probability in test_lstm.cpp.
from mpmath import mp, mpf, exp, tanh

mp.dps = 40

def sig(x):
    return 1 / (1 + exp(-x))

# gate order: forget, input, output, candidate
W = [[["0.20", "-0.10"], ["0.35", "0.05"]],
     [["-0.15", "0.25"], ["0.10", "-0.30"]],
     [["0.40", "0.15"], ["-0.20", "0.10"]],
     [["0.30", "-0.25"], ["0.05", "0.45"]]]
U = [[["0.10", "-0.05"], ["0.02", "0.12"]],
     [["-0.08", "0.06"], ["0.15", "-0.10"]],
     [["0.05", "0.05"], ["-0.12", "0.08"]],
     [["0.20", "-0.15"], ["0.10", "0.03"]]]
B = [["1.0", "0.9"], ["0.05", "-0.10"], ["0.0", "0.20"], ["-0.05", "0.10"]]
HEAD_W = ["0.75", "-0.60"]
HEAD_B = "0.10"
SEQ = [["0.5", "-1.0"], ["1.5", "0.25"], ["-0.75", "2.0"]]

h = [mpf(0), mpf(0)]
c = [mpf(0), mpf(0)]
for x in SEQ:
    x = [mpf(v) for v in x]
    pre = []
    for g in range(4):
        pre.append([sum(mpf(W[g][r][k]) * x[k] for k in range(2)) +
                    sum(mpf(U[g][r][k]) * h[k] for k in range(2)) + mpf(B[g][r])
                    for r in range(2)])
    f = [sig(v) for v in pre[0]]
    i = [sig(v) for v in pre[1]]
    o = [sig(v) for v in pre[2]]
    g_ = [tanh(v) for v in pre[3]]
    c = [f[r] * c[r] + i[r] * g_[r] for r in range(2)]
    h = [o[r] * tanh(c[r]) for r in range(2)]
logit = sum(mpf(HEAD_W[r]) * h[r] for r in range(2)) + mpf(HEAD_B)
print(mp.nstr(sig(logit), 20))
