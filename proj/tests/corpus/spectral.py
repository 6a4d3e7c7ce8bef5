#: entry main
#: input n in {2, 3}
def term(i):
    f = 1.0
    k = 0
    while k < i:
        f = f * 0.5
        k = k + 1
    return f
def main(n):
    s = 0.0
    i = 0
    while i < n:
        s = s + term(i)
        i = i + 1
    return s
