import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "weyl_torus_service.settings")
django.setup()
