from weyl_torus.management.commands._base import VerificationCommand


class Command(VerificationCommand):
    help = "Betti numbers of every sector of the extended quotient."
    suites = ("sectors",)
