# Product interface modules
