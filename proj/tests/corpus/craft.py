#: entry main
#: input hp in {0, 5}
#: input armed in {True, False}
class Sword:
    def swing(self):
        return 3
class Fist:
    def swing(self):
        return 1
def pick(armed):
    if armed == True:
        w = Sword()
    else:
        w = Fist()
    return w
def main(hp, armed):
    w = pick(armed)
    dmg = w.swing()
    if hp < dmg:
        alive = False
    else:
        alive = True
    if alive and armed:
        code = 2
    else:
        code = 1
    return code
