from weyl_torus.management.commands._base import VerificationCommand


class Command(VerificationCommand):
    help = (
        "Fixed sets of every class representative on the root and weight "
        "tori, with centraliser orbits and ramification."
    )
    suites = ("fixed_sets",)
