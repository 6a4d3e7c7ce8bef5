#: entry main
#: input n in {0, 3}
def fact(n):
    if n < 1:
        return 1
    return n * fact(n - 1)
def twice(n):
    return fact(n) + fact(n)
def main(n):
    r = twice(n)
    if r < 3:
        k = "small"
    else:
        k = "big"
    return k
